#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "graphknot/degree_fit.hpp"
#include "graphknot/knot_expr.hpp"
#include "graphknot/rational.hpp"

namespace graphknot {

// Position of the cabling slope p/q relative to the companion's Jones slope.
// Mixed means the two parities of n fall into different cases.
enum class SlopeCase { BelowSlope, AboveSlope, AtSlope, OutsideM1Gap, Mixed };

std::string_view to_string(SlopeCase c);

// alpha x^2 + beta x + gamma, the quadratic that f(k) = -pk(qk+1) + delta(|2qk+1|)
// follows on k >= 0 (sign +1) or k < 0 (sign -1) when |2qk+1| = residue
// (mod the companion's period).
struct GQuadratic {
  Rational alpha;
  Rational beta;
  Rational gamma;
  int sign = 1;
  int residue = 0;

  Rational at(const Rational& x) const { return (alpha * x + beta) * x + gamma; }
};

// alpha = -pq + 4q^2 a_m, beta = -p + 4q a_m +- 2q b_m, gamma = a_m +- b_m + c_m.
GQuadratic build_g(std::int64_t p, std::int64_t q, const QuasiPoly& child, int residue, int sign);

// Smallest k_bound >= 0 with 2q k_bound + 1 >= color_stabilization, i.e. the
// k-range beyond which every companion color |2qk+1| is past stabilization.
std::int64_t k_bound_for(std::int64_t color_stabilization, std::int64_t q);

// S_n split at the companion's stabilization:
//   minus = S_n ∩ (-inf, -K-1/2], zero = S_n ∩ (-K-1/2, K), plus = S_n ∩ [K, inf).
struct SnPartition {
  std::int64_t n = 0;
  std::int64_t q = 0;
  std::int64_t child_stabilization = 1;
  std::int64_t k_bound = 0;
  std::vector<Rational> minus;
  std::vector<Rational> zero;
  std::vector<Rational> plus;
};

SnPartition partition_sn(std::int64_t n, std::int64_t q, std::int64_t child_stabilization);

// d+[J_{K,color}] for the companion at any color >= 1.
using DegreeOracle = std::function<Rational(std::int64_t color)>;

// pq(n^2-1)/4 + max_{k in S_n} (-pk(qk+1) + d+[J_{K,|2qk+1|}]): the top degree
// of the cabling sum when no leading terms cancel.
Rational cable_degree_max(std::int64_t p, std::int64_t q, const DegreeOracle& companion, std::int64_t n);

struct DeltaPrediction {
  QuasiPoly quasi;
  std::optional<SlopeCase> case_tag;                   // cables only
  std::array<SlopeCase, 2> parity_case{};               // indexed by n mod 2
  std::array<std::optional<Rational>, 2> c_sigma;       // [0] even n, [1] odd n
  std::optional<std::int64_t> valid_from;               // set by cross-validation
  std::int64_t child_k_bound = 0;
};

// (ab/4) n^2 - ab/4 - (1 + (-1)^n)(a-2)(b-2)/8 for a > b > 1 coprime.
QuasiPoly delta_torus(std::int64_t a, std::int64_t b);

// delta_1 + delta_2 - n/2 + 1/2 on the lcm of the periods, then minimized.
QuasiPoly delta_sum(const QuasiPoly& left, const QuasiPoly& right);

// Cable of a companion whose delta has period <= 2 and b <= 0, assuming the
// companion satisfies the Sign Condition. C_sigma is evaluated from the
// partition of S_n at the companion's observed stabilization, using
// `companion` for the degrees inside S_n^0. Throws PrecondViolated.
DeltaPrediction delta_cable_period2(const QuasiPoly& child, std::int64_t p, std::int64_t q,
                                    const DegreeOracle& companion);

// Closed form for cables of T(a,b), a > b > 1, valid for every n >= 1.
DeltaPrediction delta_cable_torus(std::int64_t a, std::int64_t b, std::int64_t p, std::int64_t q);

// max |b(i) - b(j)| over residues i, j that some pair of equal-parity colors
// can occupy.
Rational monoslope_gap(const QuasiPoly& child);

// Cable of a companion with constant a, any period and b <= 0. M1 must equal
// monoslope_gap(child); p/q inside [4a - M1, 4a) is rejected.
DeltaPrediction delta_cable_monoslope(const QuasiPoly& child, std::int64_t p, std::int64_t q, const Rational& m1,
                                      const DegreeOracle& companion);

// First color n0 such that qp agrees with every sample seq[n-first_n] for
// n >= n0; empty when the last sample already disagrees.
std::optional<std::int64_t> agreement_start(const QuasiPoly& qp, std::span<const Rational> seq,
                                            std::int64_t first_n = 1);

// Records valid_from / stabilization from agreement with direct samples.
bool cross_validate(DeltaPrediction& prediction, std::span<const Rational> seq);

// -- Whole-expression pipeline ----------------------------------------------

struct PredictionStep {
  std::string expr;
  std::string rule;
  DeltaPrediction prediction;
  bool agrees = false;
};

struct ExpressionPrediction {
  DeltaPrediction top;
  std::vector<PredictionStep> trace;  // post-order, top node last

  bool all_agree() const;
};

struct PredictionSources {
  // Sampled d+[J_{K,n}] for n = 1..n_max of a subexpression.
  std::function<std::vector<Rational>(const KnotExpr&)> samples;
  // d+[J_{K,color}] of a subexpression at any color.
  std::function<Rational(const KnotExpr&, std::int64_t)> degree;
  // Applied to each node's prediction before cross-validation (fault injection).
  std::function<void(const KnotExpr&, DeltaPrediction&)> tamper;
};

// Selects per node: torus leaf -> delta_torus; cable of a torus leaf ->
// delta_cable_torus; cable of a period <= 2 companion -> delta_cable_period2;
// other cables -> delta_cable_monoslope; sums -> delta_sum. Each node is
// cross-validated against its own samples and the observed agreement start
// becomes its stabilization for the parent. Mirrored torus leaves have no
// predictor and raise PrecondViolated.
ExpressionPrediction predict_expression(const KnotExpr& k, const PredictionSources& sources);

}  // namespace graphknot
