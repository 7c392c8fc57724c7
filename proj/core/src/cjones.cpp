#include "graphknot/cjones.hpp"

#include <fstream>
#include <mutex>
#include <numeric>
#include <sstream>

#include "graphknot/errors.hpp"

namespace graphknot {
namespace {

std::int64_t checked_mul(std::int64_t x, std::int64_t y) {
  std::int64_t out;
  if (__builtin_mul_overflow(x, y, &out)) throw InvariantViolation("q-exponent overflow");
  return out;
}

std::int64_t checked_add(std::int64_t x, std::int64_t y) {
  std::int64_t out;
  if (__builtin_add_overflow(x, y, &out)) throw InvariantViolation("q-exponent overflow");
  return out;
}

void require_color(std::int64_t n) {
  if (n < 1) throw ValidationError("color must be >= 1, got " + std::to_string(n));
}

void require_torus(std::int64_t a, std::int64_t b) {
  const std::int64_t abs_a = a < 0 ? -a : a;
  if (b < 2 || abs_a <= b || std::gcd(abs_a, b) != 1) {
    throw ValidationError("torus parameters need gcd(|a|,b) = 1 and |a| > b >= 2");
  }
}

class Evaluator {
 public:
  Evaluator(JonesCache* cache, std::int64_t ceiling) : cache_(cache), ceiling_(ceiling) {}

  LaurentPoly eval(const KnotExpr& k, std::int64_t n) {
    if (n > ceiling_) {
      throw ColorCeilingExceeded("color " + std::to_string(n) + " requested for " + format(k) +
                                 " exceeds the ceiling " + std::to_string(ceiling_));
    }
    if (n == 1) return LaurentPoly::constant(1);

    std::string key;
    if (cache_ != nullptr) {
      key = format(k);
      if (auto hit = cache_->lookup(key, n)) return *std::move(hit);
    }

    LaurentPoly value;
    if (k.is_unknot()) {
      value = jones_unknot(n);
    } else if (const auto* t = k.as_torus()) {
      value = jones_torus(t->a, t->b, n);
    } else if (const auto* c = k.as_cable()) {
      value = jones_cable(c->p, c->q, [&](std::int64_t m) { return eval(c->child, m); }, n);
    } else {
      const auto* s = k.as_sum();
      value = jones_sum(eval(s->left, n), eval(s->right, n), n);
    }

    if (cache_ != nullptr) cache_->insert(key, n, value);
    return value;
  }

 private:
  JonesCache* cache_;
  std::int64_t ceiling_;
};

}  // namespace

LaurentPoly jones_unknot(std::int64_t n) {
  require_color(n);
  std::vector<LaurentPoly::Term> terms;
  terms.reserve(static_cast<std::size_t>(n));
  for (std::int64_t j = 0; j < n; ++j) terms.push_back({QExp{2 * (n - 1) - 4 * j}, 1});
  return LaurentPoly::from_terms(std::move(terms));
}

LaurentPoly normalized_torus(std::int64_t a, std::int64_t b, std::int64_t m) {
  require_torus(a, b);
  if (m < 0) throw ValidationError("normalized color must be >= 0");
  if (a < 0) return mirror(normalized_torus(-a, b, m));
  if (m == 0) return LaurentPoly::constant(1);

  const std::int64_t ab = checked_mul(a, b);
  const std::int64_t prefactor = checked_mul(checked_mul(ab, m), m + 2);
  // k = j/2 runs over integers for even m and half-integers for odd m.
  std::vector<LaurentPoly::Term> terms;
  terms.reserve(static_cast<std::size_t>(2 * (m + 1)));
  for (std::int64_t j = -m; j <= m; j += 2) {
    const std::int64_t quad = checked_add(-checked_mul(ab, checked_mul(j, j)), prefactor);
    terms.push_back({QExp{checked_add(quad, 2 * (a - b) * j + 2)}, 1});
    terms.push_back({QExp{checked_add(quad, 2 * (a + b) * j - 2)}, -1});
  }
  const LaurentPoly numerator = LaurentPoly::from_terms(std::move(terms));
  const LaurentPoly denominator = LaurentPoly::from_terms({{QExp{2 * (m + 1)}, 1}, {QExp{-2 * (m + 1)}, -1}});
  return exact_div(numerator, denominator);
}

LaurentPoly jones_torus(std::int64_t a, std::int64_t b, std::int64_t n) {
  require_color(n);
  return mul(jones_unknot(n), normalized_torus(a, b, n - 1));
}

LaurentPoly jones_cable(std::int64_t p, std::int64_t q, const ColorOracle& companion, std::int64_t n) {
  require_color(n);
  if (q < 2) throw ValidationError("cable requires q >= 2");
  const std::int64_t prefactor = checked_mul(checked_mul(p, q), checked_mul(n, n) - 1);
  std::vector<LaurentPoly::Term> terms;
  // k = j/2 over S_n: |k| <= (n-1)/2, integer for odd n, half-integer for even n.
  for (std::int64_t j = -(n - 1); j <= n - 1; j += 2) {
    const std::int64_t color = checked_add(checked_mul(q, j), 1);
    if (color == 0) continue;  // J_{K,0} = 0; never reached for q >= 2
    const LaurentPoly inner = companion(color < 0 ? -color : color);
    const std::int64_t shift = checked_add(prefactor, -checked_mul(checked_mul(p, j), checked_add(checked_mul(q, j), 2)));
    for (const auto& t : inner.terms()) {
      terms.push_back({QExp{checked_add(t.exp.quarters, shift)}, color < 0 ? Integer(-t.coeff) : t.coeff});
    }
  }
  return LaurentPoly::from_terms(std::move(terms));
}

LaurentPoly jones_sum(const LaurentPoly& left, const LaurentPoly& right, std::int64_t n) {
  return exact_div(mul(left, right), jones_unknot(n));
}

std::optional<LaurentPoly> JonesCache::lookup(const std::string& expr, std::int64_t color) const {
  std::shared_lock lock(mutex_);
  auto it = table_.find({expr, color});
  if (it == table_.end()) return std::nullopt;
  return it->second;
}

void JonesCache::insert(const std::string& expr, std::int64_t color, LaurentPoly value) {
  std::unique_lock lock(mutex_);
  table_.try_emplace({expr, color}, std::move(value));
}

std::size_t JonesCache::size() const {
  std::shared_lock lock(mutex_);
  return table_.size();
}

void JonesCache::clear() {
  std::unique_lock lock(mutex_);
  table_.clear();
}

void JonesCache::save(const std::filesystem::path& path) const {
  std::shared_lock lock(mutex_);
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error("cannot write cache file " + path.string());
  out << "graphknot-jones-cache " << kFormatVersion << '\n';
  for (const auto& [key, poly] : table_) {
    out << key.first << '\t' << key.second << '\t' << to_string(poly) << '\n';
  }
  if (!out) throw Error("failed writing cache file " + path.string());
}

bool JonesCache::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) return false;
  std::string line;
  if (!std::getline(in, line) || line != "graphknot-jones-cache " + std::to_string(kFormatVersion)) {
    return false;
  }
  std::map<std::pair<std::string, std::int64_t>, LaurentPoly> loaded;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto t1 = line.find('\t');
    const auto t2 = line.find('\t', t1 + 1);
    if (t1 == std::string::npos || t2 == std::string::npos) {
      throw Error("malformed cache line in " + path.string());
    }
    const std::string expr = format(parse_knot(line.substr(0, t1)));
    const std::int64_t color = std::stoll(line.substr(t1 + 1, t2 - t1 - 1));
    loaded.emplace(std::make_pair(expr, color), parse_laurent(std::string_view(line).substr(t2 + 1)));
  }
  std::unique_lock lock(mutex_);
  for (auto& [key, poly] : loaded) table_.try_emplace(key, std::move(poly));
  return true;
}

LaurentPoly jones(const KnotExpr& k, std::int64_t n, JonesCache* cache, std::int64_t color_ceiling) {
  require_color(n);
  return Evaluator(cache, color_ceiling).eval(k, n);
}

int eps(const KnotExpr& k, std::int64_t n, JonesCache* cache, std::int64_t color_ceiling) {
  return degree_data(jones(k, n, cache, color_ceiling)).lead_sign;
}

}  // namespace graphknot
