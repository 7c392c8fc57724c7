#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "graphknot/cjones.hpp"
#include "graphknot/rational.hpp"

namespace graphknot {

struct QuasiClass {
  Rational a;
  Rational b;
  Rational c;

  friend bool operator==(const QuasiClass&, const QuasiClass&) = default;
};

// delta(n) = a(n) n^2 + b(n) n + c(n) with coefficients periodic in n.
// classes[i] holds the coefficients for n = i (mod period). stabilization is
// the first color from which the sampled degrees agree with delta; n_max is
// the sampling window (0 when the quasi-polynomial was not fitted from data).
struct QuasiPoly {
  int period = 1;
  std::vector<QuasiClass> classes;
  std::int64_t stabilization = 1;
  std::int64_t n_max = 0;

  const QuasiClass& at(std::int64_t n) const;
  Rational value(std::int64_t n) const;
  bool same_function(const QuasiPoly& other) const;
};

// Shrinks the period to the least divisor that reproduces the same classes.
QuasiPoly minimize_period(QuasiPoly qp);

struct DegreeRow {
  std::int64_t n = 0;
  Rational d_plus;
  int lead_sign = 1;
};

struct SamplingOptions {
  std::int64_t color_ceiling = kDefaultColorCeiling;
  // 0 picks std::thread::hardware_concurrency(); 1 forces serial evaluation.
  unsigned threads = 1;
};

// d+[J_{K,n}] and the leading sign for n = 1..n_max. Colors are evaluated
// concurrently when options.threads > 1; all workers share the cache.
std::vector<DegreeRow> degree_table(const KnotExpr& k, std::int64_t n_max, JonesCache* cache,
                                    const SamplingOptions& options = {});

std::vector<Rational> dplus_sequence(const KnotExpr& k, std::int64_t n_max, JonesCache* cache,
                                     const SamplingOptions& options = {});

// Exact interpolation of seq (seq[0] is n = first_n) by a quadratic
// quasi-polynomial. Periods are tried in increasing order up to max_period;
// a period is only a candidate when every residue class holds at least
// 3 + tail samples. Per class the last three samples fix the quadratic,
// which must then reproduce the preceding `tail` samples. The least period
// that passes wins and stabilization is the least n0 from which every sample
// matches. Throws NoFit otherwise.
QuasiPoly fit_quasipoly(std::span<const Rational> seq, int max_period, int tail, std::int64_t first_n = 1);

// Heuristic: whether the samples below the stabilization threshold are
// themselves a single quasi-polynomial (on their whole range).
std::optional<QuasiPoly> fit_prestable(std::span<const Rational> seq, const QuasiPoly& stable, int max_period);

// {4 a_i}, sorted and deduplicated.
std::vector<Rational> jones_slopes(const QuasiPoly& qp);

struct SignProfile {
  std::vector<int> signs;  // signs[n-1] = eps_n
  // (n, m) with n = m (mod 2) and eps_n != eps_m, n being the first color of
  // that parity; empty when parity-constancy holds on the sampled range.
  std::optional<std::pair<std::int64_t, std::int64_t>> fails_at;

  bool holds() const { return !fails_at.has_value(); }
};

SignProfile sign_profile_from(std::vector<int> signs);
SignProfile sign_profile(const KnotExpr& k, std::int64_t n_max, JonesCache* cache,
                         const SamplingOptions& options = {});

struct ConditionDelta {
  bool period_at_most_two = false;
  bool a_constant = false;
  bool four_a_integral = false;
  bool b_constant = false;
  bool b_nonpositive = false;

  bool holds() const {
    return period_at_most_two && a_constant && four_a_integral && b_constant && b_nonpositive;
  }
};

ConditionDelta check_condition_delta(const QuasiPoly& qp);

}  // namespace graphknot
