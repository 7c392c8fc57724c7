#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <variant>

namespace graphknot {

class KnotExpr;

struct Unknot {
  friend bool operator==(const Unknot&, const Unknot&) = default;
};

// T(a, b) with gcd(|a|, b) = 1, b >= 2, |a| > b. Negative a is the mirror.
struct Torus {
  std::int64_t a = 0;
  std::int64_t b = 0;

  friend bool operator==(const Torus&, const Torus&) = default;
};

struct Cable;
struct Sum;

using KnotNode = std::variant<Unknot, Torus, Cable, Sum>;

// Immutable expression tree over {U, T(a,b), C(p,q;K), S(K1,K2)}. Subtrees
// are shared, so copies are cheap. Every factory validates its parameters
// and throws ValidationError naming the violated constraint.
class KnotExpr {
 public:
  // Parameters larger than this in magnitude are rejected at validation.
  static constexpr std::int64_t kMaxParameter = 1'000'000;

  static KnotExpr unknot();
  static KnotExpr torus(std::int64_t a, std::int64_t b);
  static KnotExpr cable(std::int64_t p, std::int64_t q, KnotExpr child);
  static KnotExpr sum(KnotExpr left, KnotExpr right);

  const KnotNode& node() const;

  bool is_unknot() const;
  const Torus* as_torus() const;
  const Cable* as_cable() const;
  const Sum* as_sum() const;

  friend bool operator==(const KnotExpr& x, const KnotExpr& y);

 private:
  explicit KnotExpr(std::shared_ptr<const KnotNode> node) : node_(std::move(node)) {}

  std::shared_ptr<const KnotNode> node_;
};

// C(p, q; child): gcd(|p|, q) = 1 and q >= 2. Negative p is allowed.
struct Cable {
  std::int64_t p = 0;
  std::int64_t q = 0;
  KnotExpr child;
};

struct Sum {
  KnotExpr left;
  KnotExpr right;
};

inline const KnotNode& KnotExpr::node() const { return *node_; }

// Grammar (whitespace-insensitive):
//   expr := "U" | "T(" int "," int ")" | "C(" int "," int ";" expr ")"
//         | "S(" expr "," expr ")"
//   int  := ["-"] digit+
// Throws SyntaxError (with byte offset) or ValidationError.
KnotExpr parse_knot(std::string_view text);

// Canonical text, e.g. "C(191,2; C(23,4; T(3,2)))", "S(T(3,2), U)".
std::string format(const KnotExpr& k);

// Largest color requested anywhere in the tree when evaluating k at color n.
std::int64_t max_required_color(const KnotExpr& k, std::int64_t n);

// Removes unknot summands and cables of the unknot with |p| = 1, and rewrites
// cables of the unknot as torus leaves, so that the result is either U or
// contains no U leaf at all.
KnotExpr simplify_unknots(const KnotExpr& k);

}  // namespace graphknot
