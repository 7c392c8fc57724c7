#include "graphknot/surfaces.hpp"

#include <algorithm>
#include <numeric>

#include "graphknot/errors.hpp"

namespace graphknot {
namespace {

std::string str(std::int64_t v) { return std::to_string(v); }

std::int64_t narrow(const Integer& z) { return to_int64(z); }

}  // namespace

Rational SurfaceData::ratio() const {
  if (boundary_count == 0) throw DivisionByZero("surface without boundary");
  return make_rational(Integer(euler), Integer(Integer(boundary_count) * slope.get_den()));
}

SurfaceData surface_torus(std::int64_t a, std::int64_t b) {
  const std::int64_t abs_a = a < 0 ? -a : a;
  if (b < 2 || abs_a <= b || std::gcd(abs_a, b) != 1) {
    throw ValidationError("torus needs gcd(|a|,b) = 1 and |a| > b >= 2");
  }
  SurfaceData s;
  const std::string name = "T(" + str(a) + "," + str(b) + ")";
  if (a > 0) {
    s.slope = Rational(Integer(a) * b);
    s.boundary_count = 2;
    s.euler = 0;
    s.provenance.push_back("annulus of " + name);
  } else {
    s.slope = 0;
    s.boundary_count = 1;
    s.euler = narrow(1 - Integer(abs_a - 1) * (b - 1));
    s.provenance.push_back("fiber surface of " + name);
  }
  return s;
}

SurfaceData surface_cable(const SurfaceData& child, std::int64_t p, std::int64_t q, const Rational& a_child) {
  if (q < 2 || std::gcd(p < 0 ? -p : p, q) != 1) throw ValidationError("cable requires gcd(|p|,q) = 1 and q >= 2");
  const Rational four_a = 4 * a_child;
  if (!is_integer(four_a)) throw PrecondViolated("companion slope 4a = " + to_fraction_string(four_a) + " is not integral");
  if (child.slope != four_a) {
    throw PrecondViolated("companion surface has slope " + to_fraction_string(child.slope) + ", expected " +
                          to_fraction_string(four_a));
  }
  const Rational slope = make_rational(p, q);
  if (slope == four_a) throw AtSlope("p/q = " + to_fraction_string(slope) + " equals the companion slope");

  const std::string step = "C(" + str(p) + "," + str(q) + ")";
  SurfaceData s;
  s.provenance = child.provenance;
  if (slope < four_a) {
    const Integer s4 = four_a.get_num();
    s.slope = Rational(Integer(q) * q * s4);
    s.boundary_count = child.boundary_count;
    s.euler = narrow(Integer(q) * child.euler + Integer(child.boundary_count) * (q - 1) * (p - s4 * q));
    s.provenance.push_back(step + ": " + str(q) + " copies joined across the cabling annulus");
  } else {
    s.slope = Rational(Integer(p) * q);
    s.boundary_count = 2;
    s.euler = 0;
    s.provenance.push_back(step + ": cabling annulus");
  }
  return s;
}

SurfaceData surface_sum(const SurfaceData& s1, const SurfaceData& s2) {
  const Integer l1 = Integer(s1.boundary_count) * s1.slope.get_den();
  const Integer l2 = Integer(s2.boundary_count) * s2.slope.get_den();
  if (l1 <= 0 || l2 <= 0) throw GluingMismatch("summands need boundary");
  Integer l;
  mpz_lcm(l.get_mpz_t(), l1.get_mpz_t(), l2.get_mpz_t());
  const Integer m1 = l / l1;
  const Integer m2 = l / l2;

  SurfaceData s;
  s.slope = s1.slope + s2.slope;
  const Integer q = s.slope.get_den();
  if (l % q != 0) {
    throw GluingMismatch("lcm " + l.get_str() + " of the boundary lengths is not divisible by " + q.get_str());
  }
  s.boundary_count = narrow(l / q);
  s.euler = narrow(m1 * s1.euler + m2 * s2.euler - l);
  s.provenance = s1.provenance;
  s.provenance.insert(s.provenance.end(), s2.provenance.begin(), s2.provenance.end());
  s.provenance.push_back("sum: " + m1.get_str() + " + " + m2.get_str() + " copies glued along the swallow-follow torus");
  return s;
}

SurfaceData frontier_replacement(const SurfaceData& s) {
  SurfaceData out = s;
  out.euler = narrow(Integer(s.euler) * 2);
  out.boundary_count = narrow(Integer(s.boundary_count) * 2);
  out.provenance.push_back("frontier of a regular neighbourhood");
  return out;
}

bool SSNodeCheck::pass() const {
  return !classes.empty() && std::all_of(classes.begin(), classes.end(), [](const SSClassCheck& c) { return c.pass(); });
}

bool SSReport::pass() const {
  return witness.has_value() && !nodes.empty() &&
         std::all_of(nodes.begin(), nodes.end(), [](const SSNodeCheck& n) { return n.pass(); });
}

namespace {

class WitnessBuilder {
 public:
  WitnessBuilder(const DeltaSource& sub_delta, SSReport& report) : sub_delta_(sub_delta), report_(report) {}

  // The witness of k, or empty when some node below k failed its check.
  std::optional<SurfaceData> build(const KnotExpr& k) {
    std::optional<SurfaceData> w;
    if (const auto* t = k.as_torus()) {
      w = surface_torus(t->a, t->b);
    } else if (const auto* c = k.as_cable()) {
      const QuasiPoly child_delta = sub_delta_(c->child);
      const auto cw = checked(c->child, child_delta);
      if (!cw) return std::nullopt;
      w = surface_cable(*cw, c->p, c->q, child_delta.classes.front().a);
    } else if (const auto* s = k.as_sum()) {
      const auto lw = checked(s->left, sub_delta_(s->left));
      const auto rw = checked(s->right, sub_delta_(s->right));
      if (!lw || !rw) return std::nullopt;
      w = surface_sum(*lw, *rw);
    } else {
      throw UnknotLeaf("unknot leaf inside " + format(k));
    }
    return w;
  }

  // Builds and records the node check; empty unless the check passed.
  std::optional<SurfaceData> checked(const KnotExpr& k, const QuasiPoly& delta) {
    auto w = build(k);
    if (!w) return std::nullopt;
    SSNodeCheck node;
    node.expr = format(k);
    node.witness = *w;
    const Rational ratio = w->ratio();
    for (int r = 0; r < delta.period; ++r) {
      const QuasiClass& c = delta.at(r);
      node.classes.push_back(SSClassCheck{r, 4 * c.a, w->slope, 2 * c.b, ratio});
    }
    const bool ok = node.pass();
    report_.nodes.push_back(std::move(node));
    if (!ok) return std::nullopt;
    return w;
  }

 private:
  const DeltaSource& sub_delta_;
  SSReport& report_;
};

}  // namespace

SSReport verify_ss(const KnotExpr& k, const QuasiPoly& delta, const DeltaSource& sub_delta) {
  const KnotExpr simple = simplify_unknots(k);
  if (simple.is_unknot()) throw UnknotLeaf(format(k) + " is the unknot; no essential surface to certify");
  SSReport report;
  report.expr = format(k);
  WitnessBuilder builder(sub_delta, report);
  if (builder.checked(simple, delta) || (!report.nodes.empty() && report.nodes.back().expr == format(simple))) {
    report.witness = report.nodes.back().witness;
  }
  return report;
}

}  // namespace graphknot
