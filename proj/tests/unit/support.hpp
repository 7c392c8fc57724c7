#pragma once

#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "graphknot/degree_fit.hpp"
#include "graphknot/knot_expr.hpp"
#include "graphknot/qlaurent.hpp"

namespace graphknot::testing {

// Hand-rolled generators; every property test seeds its own engine.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }

  bool coin() { return range(0, 1) == 1; }

  Rational rational(std::int64_t span, std::int64_t max_den) {
    return make_rational(range(-span, span), range(1, max_den));
  }

  LaurentPoly poly(int max_terms, std::int64_t exp_span, std::int64_t coeff_span) {
    std::vector<LaurentPoly::Term> terms;
    const int count = static_cast<int>(range(0, max_terms));
    for (int i = 0; i < count; ++i) {
      terms.push_back({QExp{range(-exp_span, exp_span)}, Integer(static_cast<long>(range(-coeff_span, coeff_span)))});
    }
    return LaurentPoly::from_terms(std::move(terms));
  }

  LaurentPoly nonzero_poly(int max_terms, std::int64_t exp_span, std::int64_t coeff_span) {
    for (;;) {
      LaurentPoly p = poly(max_terms, exp_span, coeff_span);
      if (!p.is_zero()) return p;
    }
  }

  // Coprime pair with |a| > b >= 2.
  std::pair<std::int64_t, std::int64_t> torus_params(std::int64_t max_b) {
    for (;;) {
      const std::int64_t b = range(2, max_b);
      const std::int64_t a = range(b + 1, 3 * b + 2);
      if (std::gcd(a, b) == 1) return {coin() ? a : -a, b};
    }
  }

  std::pair<std::int64_t, std::int64_t> cable_params(std::int64_t max_q, std::int64_t max_p) {
    for (;;) {
      const std::int64_t q = range(2, max_q);
      const std::int64_t p = range(-max_p, max_p);
      if (p != 0 && std::gcd(p < 0 ? -p : p, q) == 1) return {p, q};
    }
  }

  KnotExpr knot(int depth) {
    const auto pick = depth <= 0 ? range(0, 1) : range(0, 3);
    switch (pick) {
      case 0:
        return KnotExpr::unknot();
      case 1: {
        const auto [a, b] = torus_params(7);
        return KnotExpr::torus(a, b);
      }
      case 2: {
        const auto [p, q] = cable_params(5, 60);
        return KnotExpr::cable(p, q, knot(depth - 1));
      }
      default:
        return KnotExpr::sum(knot(depth - 1), knot(depth - 1));
    }
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline QuasiPoly make_quasi(std::vector<QuasiClass> classes, std::int64_t stabilization = 1) {
  QuasiPoly qp;
  qp.period = static_cast<int>(classes.size());
  qp.classes = std::move(classes);
  qp.stabilization = stabilization;
  return qp;
}

inline Rational R(std::int64_t num, std::int64_t den = 1) { return make_rational(num, den); }

}  // namespace graphknot::testing
