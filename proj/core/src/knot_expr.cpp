#include "graphknot/knot_expr.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "graphknot/errors.hpp"

namespace graphknot {
namespace {

void check_magnitude(std::int64_t v, const char* name) {
  if (v > KnotExpr::kMaxParameter || v < -KnotExpr::kMaxParameter) {
    throw ValidationError(std::string(name) + " = " + std::to_string(v) + " exceeds the supported magnitude " +
                          std::to_string(KnotExpr::kMaxParameter));
  }
}

std::int64_t abs64(std::int64_t v) { return v < 0 ? -v : v; }

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  KnotExpr parse_all() {
    KnotExpr k = expr();
    skip_ws();
    if (pos_ != text_.size()) throw SyntaxError("trailing input", pos_);
    return k;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  void expect(char c) {
    if (peek() != c) {
      throw SyntaxError(std::string("expected '") + c + "'", pos_);
    }
    ++pos_;
  }

  std::int64_t integer() {
    skip_ws();
    const std::size_t start = pos_;
    bool negative = false;
    if (pos_ < text_.size() && text_[pos_] == '-') {
      negative = true;
      ++pos_;
    }
    const std::size_t digits_start = pos_;
    std::int64_t value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + (text_[pos_] - '0');
      if (value > KnotExpr::kMaxParameter) {
        throw ValidationError("integer at byte " + std::to_string(start) + " exceeds the supported magnitude " +
                              std::to_string(KnotExpr::kMaxParameter));
      }
      ++pos_;
    }
    if (pos_ == digits_start) throw SyntaxError("expected integer", pos_);
    return negative ? -value : value;
  }

  KnotExpr expr() {
    const char head = peek();
    const std::size_t start = pos_;
    switch (head) {
      case 'U':
        ++pos_;
        return KnotExpr::unknot();
      case 'T': {
        ++pos_;
        expect('(');
        const auto a = integer();
        expect(',');
        const auto b = integer();
        expect(')');
        return validated(start, [&] { return KnotExpr::torus(a, b); });
      }
      case 'C': {
        ++pos_;
        expect('(');
        const auto p = integer();
        expect(',');
        const auto q = integer();
        expect(';');
        KnotExpr child = expr();
        expect(')');
        return validated(start, [&] { return KnotExpr::cable(p, q, child); });
      }
      case 'S': {
        ++pos_;
        expect('(');
        KnotExpr left = expr();
        expect(',');
        KnotExpr right = expr();
        expect(')');
        return KnotExpr::sum(std::move(left), std::move(right));
      }
      default:
        throw SyntaxError("expected one of U, T, C, S", pos_);
    }
  }

  template <class Make>
  static KnotExpr validated(std::size_t start, Make make) {
    try {
      return make();
    } catch (const ValidationError& e) {
      throw ValidationError(std::string(e.what()) + " (node at byte " + std::to_string(start) + ")");
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

KnotExpr KnotExpr::unknot() { return KnotExpr(std::make_shared<const KnotNode>(Unknot{})); }

KnotExpr KnotExpr::torus(std::int64_t a, std::int64_t b) {
  check_magnitude(a, "torus parameter a");
  check_magnitude(b, "torus parameter b");
  if (b < 2) throw ValidationError("torus T(a,b) requires b >= 2");
  if (abs64(a) <= b) throw ValidationError("torus T(a,b) requires |a| > b (write the normalized pair)");
  if (std::gcd(abs64(a), b) != 1) throw ValidationError("torus T(a,b) requires gcd(|a|, b) = 1");
  return KnotExpr(std::make_shared<const KnotNode>(Torus{a, b}));
}

KnotExpr KnotExpr::cable(std::int64_t p, std::int64_t q, KnotExpr child) {
  check_magnitude(p, "cable parameter p");
  check_magnitude(q, "cable parameter q");
  if (q < 2) throw ValidationError("cable C(p,q;K) requires q >= 2 (negate p instead of q; q = 1 is the companion)");
  if (std::gcd(abs64(p), q) != 1) throw ValidationError("cable C(p,q;K) requires gcd(|p|, q) = 1");
  return KnotExpr(std::make_shared<const KnotNode>(Cable{p, q, std::move(child)}));
}

KnotExpr KnotExpr::sum(KnotExpr left, KnotExpr right) {
  return KnotExpr(std::make_shared<const KnotNode>(Sum{std::move(left), std::move(right)}));
}

bool KnotExpr::is_unknot() const { return std::holds_alternative<Unknot>(*node_); }
const Torus* KnotExpr::as_torus() const { return std::get_if<Torus>(node_.get()); }
const Cable* KnotExpr::as_cable() const { return std::get_if<Cable>(node_.get()); }
const Sum* KnotExpr::as_sum() const { return std::get_if<Sum>(node_.get()); }

bool operator==(const KnotExpr& x, const KnotExpr& y) {
  if (x.node_ == y.node_) return true;
  if (x.node_->index() != y.node_->index()) return false;
  if (x.is_unknot()) return true;
  if (const auto* t = x.as_torus()) return *t == *y.as_torus();
  if (const auto* c = x.as_cable()) {
    const auto* d = y.as_cable();
    return c->p == d->p && c->q == d->q && c->child == d->child;
  }
  const auto* s = x.as_sum();
  const auto* r = y.as_sum();
  return s->left == r->left && s->right == r->right;
}

KnotExpr parse_knot(std::string_view text) { return Parser(text).parse_all(); }

std::string format(const KnotExpr& k) {
  if (k.is_unknot()) return "U";
  if (const auto* t = k.as_torus()) return "T(" + std::to_string(t->a) + "," + std::to_string(t->b) + ")";
  if (const auto* c = k.as_cable()) {
    return "C(" + std::to_string(c->p) + "," + std::to_string(c->q) + "; " + format(c->child) + ")";
  }
  const auto* s = k.as_sum();
  return "S(" + format(s->left) + ", " + format(s->right) + ")";
}

std::int64_t max_required_color(const KnotExpr& k, std::int64_t n) {
  if (const auto* c = k.as_cable()) {
    return std::max(n, max_required_color(c->child, c->q * (n - 1) + 1));
  }
  if (const auto* s = k.as_sum()) {
    return std::max(max_required_color(s->left, n), max_required_color(s->right, n));
  }
  return n;
}

KnotExpr simplify_unknots(const KnotExpr& k) {
  if (const auto* s = k.as_sum()) {
    KnotExpr left = simplify_unknots(s->left);
    KnotExpr right = simplify_unknots(s->right);
    if (left.is_unknot()) return right;
    if (right.is_unknot()) return left;
    return KnotExpr::sum(std::move(left), std::move(right));
  }
  if (const auto* c = k.as_cable()) {
    KnotExpr child = simplify_unknots(c->child);
    if (!child.is_unknot()) return KnotExpr::cable(c->p, c->q, std::move(child));
    // The (p,q)-cable of the unknot is the torus knot T(p,q) = T(q,p).
    const std::int64_t m = abs64(c->p);
    if (m == 1) return KnotExpr::unknot();
    const std::int64_t sign = c->p < 0 ? -1 : 1;
    return m > c->q ? KnotExpr::torus(sign * m, c->q) : KnotExpr::torus(sign * c->q, m);
  }
  return k;
}

}  // namespace graphknot
