#include "graphknot/predict.hpp"

#include <algorithm>
#include <numeric>

#include "graphknot/errors.hpp"

namespace graphknot {
namespace {

int mod(std::int64_t x, std::int64_t m) { return static_cast<int>(((x % m) + m) % m); }

void require_cable_params(std::int64_t p, std::int64_t q) {
  if (q < 2) throw ValidationError("cable requires q >= 2");
  if (std::gcd(p < 0 ? -p : p, q) != 1) throw ValidationError("cable requires gcd(|p|, q) = 1");
}

void require_nonempty(const QuasiPoly& qp) {
  if (qp.period < 1 || static_cast<int>(qp.classes.size()) != qp.period) {
    throw InvariantViolation("quasi-polynomial with inconsistent period");
  }
}

// Case p/q < 4a: delta = q^2 a n^2 + (q b + (q-1)(p - 4qa)/2) n
//                        + a(q-1)^2 - (b + p/2)(q-1) + c.
QuasiClass below_class(std::int64_t p, std::int64_t q, const QuasiClass& child) {
  const Rational P(p), Q(q);
  QuasiClass out;
  out.a = Q * Q * child.a;
  out.b = Q * child.b + (Q - 1) * (P - 4 * Q * child.a) / 2;
  out.c = child.a * (Q - 1) * (Q - 1) - (child.b + P / 2) * (Q - 1) + child.c;
  return out;
}

// pq(n^2-1)/4 + C written as a quadratic in n.
QuasiClass above_class(std::int64_t p, std::int64_t q, const Rational& c_sigma) {
  const Rational pq4 = Rational(p) * Rational(q) / 4;
  return QuasiClass{pq4, 0, c_sigma - pq4};
}

Rational f_term(std::int64_t p, std::int64_t q, std::int64_t j) {
  // -pk(qk+1) with k = j/2
  const Integer P(p), Q(q), J(j);
  return make_rational(Integer(-P * J * (Q * J + 2)), 4);
}

std::int64_t abs_color(std::int64_t q, std::int64_t j) {
  const std::int64_t c = q * j + 1;
  return c < 0 ? -c : c;
}

// max over S_n of f(k) for n = sigma (mod 2), n large. h-values cover the
// first `period` elements of S^+ and S^- (every residue reachable there), the
// oracle covers S^0. In doubled units k = j/2 and j = n - 1 (mod 2).
Rational c_sigma_for(std::int64_t p, std::int64_t q, const QuasiPoly& child, std::int64_t k_bound, int sigma,
                     const DegreeOracle& companion) {
  const std::int64_t j_plus = sigma == 1 ? 2 * k_bound : 2 * k_bound + 1;
  const std::int64_t j_minus = sigma == 1 ? -2 * k_bound - 2 : -2 * k_bound - 1;
  std::optional<Rational> best;
  auto consider = [&](Rational v) {
    if (!best || v > *best) best = std::move(v);
  };
  for (int t = 0; t < child.period; ++t) {
    const std::int64_t jp = j_plus + 2 * t;
    const GQuadratic hp = build_g(p, q, child, mod(abs_color(q, jp), child.period), +1);
    consider(hp.at(make_rational(jp, 2)));
    const std::int64_t jm = j_minus - 2 * t;
    const GQuadratic hm = build_g(p, q, child, mod(abs_color(q, jm), child.period), -1);
    consider(hm.at(make_rational(jm, 2)));
  }
  if (!companion && j_minus + 2 < j_plus) throw PrecondViolated("companion degrees needed on S^0");
  for (std::int64_t j = j_minus + 2; j < j_plus; j += 2) {
    consider(f_term(p, q, j) + companion(abs_color(q, j)));
  }
  return *best;
}

void check_b_nonpositive(const DeltaPrediction& d) {
  for (const auto& c : d.quasi.classes) {
    if (c.b > 0) throw InvariantViolation("predicted delta has b > 0: " + to_fraction_string(c.b));
  }
}

SlopeCase combine(const std::array<SlopeCase, 2>& cases) {
  return cases[0] == cases[1] ? cases[0] : SlopeCase::Mixed;
}

}  // namespace

std::string_view to_string(SlopeCase c) {
  switch (c) {
    case SlopeCase::BelowSlope: return "below";
    case SlopeCase::AboveSlope: return "above";
    case SlopeCase::AtSlope: return "at";
    case SlopeCase::OutsideM1Gap: return "outside-m1-gap";
    case SlopeCase::Mixed: return "mixed";
  }
  return "?";
}

GQuadratic build_g(std::int64_t p, std::int64_t q, const QuasiPoly& child, int residue, int sign) {
  const QuasiClass& m = child.at(residue);
  const Rational P(p), Q(q);
  GQuadratic g;
  g.alpha = -P * Q + 4 * Q * Q * m.a;
  g.beta = -P + 4 * Q * m.a + sign * 2 * Q * m.b;
  g.gamma = m.a + sign * m.b + m.c;
  g.sign = sign;
  g.residue = residue;
  return g;
}

std::int64_t k_bound_for(std::int64_t color_stabilization, std::int64_t q) {
  if (q < 1) throw ValidationError("q must be positive");
  if (color_stabilization <= 1) return 0;
  return (color_stabilization - 1 + 2 * q - 1) / (2 * q);
}

SnPartition partition_sn(std::int64_t n, std::int64_t q, std::int64_t child_stabilization) {
  if (n < 1) throw ValidationError("color must be >= 1");
  SnPartition out;
  out.n = n;
  out.q = q;
  out.child_stabilization = child_stabilization;
  out.k_bound = k_bound_for(child_stabilization, q);
  for (std::int64_t j = -(n - 1); j <= n - 1; j += 2) {
    Rational k = make_rational(j, 2);
    if (j <= -2 * out.k_bound - 1) {
      out.minus.push_back(std::move(k));
    } else if (j >= 2 * out.k_bound) {
      out.plus.push_back(std::move(k));
    } else {
      out.zero.push_back(std::move(k));
    }
  }
  return out;
}

Rational cable_degree_max(std::int64_t p, std::int64_t q, const DegreeOracle& companion, std::int64_t n) {
  require_cable_params(p, q);
  if (n < 1) throw ValidationError("color must be >= 1");
  std::optional<Rational> best;
  for (std::int64_t j = -(n - 1); j <= n - 1; j += 2) {
    Rational v = f_term(p, q, j) + companion(abs_color(q, j));
    if (!best || v > *best) best = std::move(v);
  }
  const Integer N(n);
  return make_rational(Integer(Integer(p) * q * (N * N - 1)), 4) + *best;
}

QuasiPoly delta_torus(std::int64_t a, std::int64_t b) {
  if (a < 0) throw PrecondViolated("no closed form for mirrored torus knots");
  if (b < 2 || a <= b || std::gcd(a, b) != 1) throw ValidationError("torus needs a > b >= 2 coprime");
  const Rational ab4 = make_rational(Integer(a) * b, 4);
  const Rational corr = make_rational(Integer(a - 2) * (b - 2), 4);
  QuasiPoly qp;
  qp.period = 2;
  qp.classes = {QuasiClass{ab4, 0, -ab4 - corr}, QuasiClass{ab4, 0, -ab4}};
  return minimize_period(std::move(qp));
}

QuasiPoly delta_sum(const QuasiPoly& left, const QuasiPoly& right) {
  require_nonempty(left);
  require_nonempty(right);
  QuasiPoly qp;
  qp.period = std::lcm(left.period, right.period);
  for (int r = 0; r < qp.period; ++r) {
    const QuasiClass& x = left.at(r);
    const QuasiClass& y = right.at(r);
    qp.classes.push_back(QuasiClass{x.a + y.a, x.b + y.b - Rational(1, 2), x.c + y.c + Rational(1, 2)});
  }
  qp.stabilization = std::max(left.stabilization, right.stabilization);
  return minimize_period(std::move(qp));
}

DeltaPrediction delta_cable_period2(const QuasiPoly& child, std::int64_t p, std::int64_t q,
                                    const DegreeOracle& companion) {
  require_cable_params(p, q);
  require_nonempty(child);
  if (child.period > 2) throw PrecondViolated("companion delta has period " + std::to_string(child.period) + " > 2");
  const Rational slope = make_rational(p, q);

  DeltaPrediction out;
  out.child_k_bound = k_bound_for(child.stabilization, q);
  out.quasi.period = 2;
  out.quasi.classes.resize(2);
  for (int sigma = 0; sigma < 2; ++sigma) {
    const int i = mod(q * (sigma - 1) + 1, 2);
    const QuasiClass& m = child.at(i);
    const Rational four_a = 4 * m.a;
    if (m.b > 0) throw PrecondViolated("companion delta has b > 0");
    if (slope == four_a && m.b == 0) throw PrecondViolated("p/q equals the companion slope while b = 0");
    if (slope < four_a) {
      out.parity_case[sigma] = SlopeCase::BelowSlope;
      out.quasi.classes[sigma] = below_class(p, q, m);
    } else {
      out.parity_case[sigma] = slope == four_a ? SlopeCase::AtSlope : SlopeCase::AboveSlope;
      Rational c = c_sigma_for(p, q, child, out.child_k_bound, sigma, companion);
      out.quasi.classes[sigma] = above_class(p, q, c);
      out.c_sigma[sigma] = std::move(c);
    }
  }
  out.case_tag = combine(out.parity_case);
  out.quasi = minimize_period(std::move(out.quasi));
  check_b_nonpositive(out);
  return out;
}

DeltaPrediction delta_cable_torus(std::int64_t a, std::int64_t b, std::int64_t p, std::int64_t q) {
  require_cable_params(p, q);
  if (b < 2 || a <= b || std::gcd(a, b) != 1) throw PrecondViolated("torus companion needs a > b >= 2 coprime");
  const Rational slope = make_rational(p, q);
  const Rational ab(Integer(a) * b);
  const Rational P(p), Q(q);
  if (slope == ab) throw PrecondViolated("p/q equals the companion slope");
  const Rational lead = -P + Q * ab;

  DeltaPrediction out;
  out.quasi.period = 2;
  out.quasi.classes.resize(2);
  for (int sigma = 0; sigma < 2; ++sigma) {
    const int i = mod(q * (sigma - 1) + 1, 2);
    const Rational corr = i == 0 ? make_rational(Integer(a - 2) * (b - 2), 4) : Rational(0);
    if (slope < ab) {
      out.parity_case[sigma] = SlopeCase::BelowSlope;
      QuasiClass& c = out.quasi.classes[sigma];
      c.a = Q * Q * ab / 4;
      c.b = (Q - 1) * (P - Q * ab) / 2;
      c.c = ab / 4 * (Q - 1) * (Q - 1) - P / 2 * (Q - 1) - ab / 4 - corr;
    } else {
      out.parity_case[sigma] = SlopeCase::AboveSlope;
      // g_i(k) = q(-p+qab)k^2 + (-p+qab)k - corr_i at k = -1/2 (even n) or 0 (odd n)
      const Rational k = sigma == 0 ? Rational(-1, 2) : Rational(0);
      Rational c = Q * lead * k * k + lead * k - corr;
      out.quasi.classes[sigma] = above_class(p, q, c);
      out.c_sigma[sigma] = std::move(c);
    }
  }
  out.case_tag = combine(out.parity_case);
  out.quasi = minimize_period(std::move(out.quasi));
  out.valid_from = 1;
  check_b_nonpositive(out);
  return out;
}

Rational monoslope_gap(const QuasiPoly& child) {
  require_nonempty(child);
  Rational gap(0);
  for (int r = 0; r < child.period; ++r) {
    for (int s = 0; s < child.period; ++s) {
      // Odd period: colors of one parity reach every residue.
      if (child.period % 2 == 0 && (r - s) % 2 != 0) continue;
      gap = std::max(gap, Rational(abs(child.classes[r].b - child.classes[s].b)));
    }
  }
  return gap;
}

DeltaPrediction delta_cable_monoslope(const QuasiPoly& child, std::int64_t p, std::int64_t q, const Rational& m1,
                                      const DegreeOracle& companion) {
  require_cable_params(p, q);
  require_nonempty(child);
  const Rational a = child.classes.front().a;
  for (const auto& c : child.classes) {
    if (c.a != a) throw PrecondViolated("companion delta has more than one Jones slope");
    if (c.b > 0) throw PrecondViolated("companion delta has b > 0");
  }
  if (m1 != monoslope_gap(child)) throw PrecondViolated("M1 does not match the companion's b-gap");

  const Rational slope = make_rational(p, q);
  const Rational four_a = 4 * a;
  DeltaPrediction out;
  out.child_k_bound = k_bound_for(child.stabilization, q);

  if (slope < four_a - m1) {
    out.case_tag = SlopeCase::OutsideM1Gap;
    out.parity_case = {SlopeCase::OutsideM1Gap, SlopeCase::OutsideM1Gap};
    out.quasi.period = child.period;
    for (int r = 0; r < child.period; ++r) {
      out.quasi.classes.push_back(below_class(p, q, child.at(mod(q * (r - 1) + 1, child.period))));
    }
  } else if (slope < four_a) {
    throw PrecondViolated("p/q = " + to_fraction_string(slope) + " lies in [4a - M1, 4a) = [" +
                          to_fraction_string(four_a - m1) + ", " + to_fraction_string(four_a) + ")");
  } else {
    const bool at = slope == four_a;
    if (at) {
      for (const auto& c : child.classes) {
        if (c.b == 0) throw PrecondViolated("p/q equals the companion slope while some b = 0");
      }
    }
    out.case_tag = at ? SlopeCase::AtSlope : SlopeCase::AboveSlope;
    out.parity_case = {*out.case_tag, *out.case_tag};
    out.quasi.period = 2;
    out.quasi.classes.resize(2);
    for (int sigma = 0; sigma < 2; ++sigma) {
      Rational c = c_sigma_for(p, q, child, out.child_k_bound, sigma, companion);
      out.quasi.classes[sigma] = above_class(p, q, c);
      out.c_sigma[sigma] = std::move(c);
    }
  }
  out.quasi = minimize_period(std::move(out.quasi));
  check_b_nonpositive(out);
  return out;
}

std::optional<std::int64_t> agreement_start(const QuasiPoly& qp, std::span<const Rational> seq, std::int64_t first_n) {
  require_nonempty(qp);
  std::int64_t n = first_n + static_cast<std::int64_t>(seq.size()) - 1;
  const std::int64_t last = n;
  while (n >= first_n && qp.value(n) == seq[static_cast<std::size_t>(n - first_n)]) --n;
  if (n == last) return std::nullopt;
  return n + 1;
}

bool cross_validate(DeltaPrediction& prediction, std::span<const Rational> seq) {
  const auto n_max = static_cast<std::int64_t>(seq.size());
  prediction.quasi.n_max = n_max;
  const auto start = agreement_start(prediction.quasi, seq);
  prediction.valid_from = start;
  // Agreement has to cover three samples of every residue class.
  const bool agrees = start && n_max - *start + 1 >= 3 * static_cast<std::int64_t>(prediction.quasi.period);
  prediction.quasi.stabilization = agrees ? *start : n_max + 1;
  return agrees;
}

bool ExpressionPrediction::all_agree() const {
  return std::all_of(trace.begin(), trace.end(), [](const PredictionStep& s) { return s.agrees; });
}

namespace {

class Pipeline {
 public:
  explicit Pipeline(const PredictionSources& sources) : src_(sources) {}

  DeltaPrediction node(const KnotExpr& k) {
    DeltaPrediction pred;
    std::string rule;
    if (k.is_unknot()) {
      pred.quasi.classes = {QuasiClass{0, Rational(1, 2), Rational(-1, 2)}};
      rule = "unknot";
    } else if (const auto* t = k.as_torus()) {
      if (t->a < 0) throw PrecondViolated("no predictor for the mirrored torus leaf " + format(k));
      pred.quasi = delta_torus(t->a, t->b);
      rule = "torus";
    } else if (const auto* c = k.as_cable()) {
      const auto* leaf = c->child.as_torus();
      if (leaf != nullptr && leaf->a > 0) {
        pred = delta_cable_torus(leaf->a, leaf->b, c->p, c->q);
        rule = "cable-torus";
      } else {
        const DeltaPrediction child = node(c->child);
        const KnotExpr companion_expr = c->child;
        DegreeOracle companion = [this, companion_expr](std::int64_t color) {
          return src_.degree(companion_expr, color);
        };
        if (child.quasi.period <= 2) {
          pred = delta_cable_period2(child.quasi, c->p, c->q, companion);
          rule = "cable-period2";
        } else {
          pred = delta_cable_monoslope(child.quasi, c->p, c->q, monoslope_gap(child.quasi), companion);
          rule = "cable-monoslope";
        }
      }
    } else {
      const auto* s = k.as_sum();
      const DeltaPrediction left = node(s->left);
      const DeltaPrediction right = node(s->right);
      pred.quasi = delta_sum(left.quasi, right.quasi);
      rule = "sum";
    }

    if (src_.tamper) src_.tamper(k, pred);
    const std::vector<Rational> samples = src_.samples(k);
    const bool agrees = cross_validate(pred, samples);
    trace_.push_back(PredictionStep{format(k), std::move(rule), pred, agrees});
    return pred;
  }

  std::vector<PredictionStep> take_trace() { return std::move(trace_); }

 private:
  const PredictionSources& src_;
  std::vector<PredictionStep> trace_;
};

}  // namespace

ExpressionPrediction predict_expression(const KnotExpr& k, const PredictionSources& sources) {
  if (!sources.samples || !sources.degree) throw ValidationError("prediction needs sample and degree sources");
  Pipeline pipeline(sources);
  ExpressionPrediction out;
  out.top = pipeline.node(simplify_unknots(k));
  out.trace = pipeline.take_trace();
  return out;
}

}  // namespace graphknot
