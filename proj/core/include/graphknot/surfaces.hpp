#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "graphknot/degree_fit.hpp"
#include "graphknot/knot_expr.hpp"
#include "graphknot/rational.hpp"

namespace graphknot {

// Boundary slope, number of boundary components and Euler characteristic of
// an essential surface; provenance lists the construction steps, leaf first.
struct SurfaceData {
  Rational slope;
  std::int64_t boundary_count = 0;
  std::int64_t euler = 0;
  std::vector<std::string> provenance;

  // chi / (|dS| * q) where q is the denominator of the slope.
  Rational ratio() const;
};

// a > 0: the cabling annulus, slope ab, chi = 0, two boundary components.
// a < 0: the fiber surface of the mirror, slope 0, chi = 1 - (|a|-1)(b-1).
SurfaceData surface_torus(std::int64_t a, std::int64_t b);

// child must be a Jones-slope witness of the companion with integral slope
// 4 a_child. Below that slope the witness is q parallel copies joined across
// the cabling annulus; above it, the cabling annulus. Throws AtSlope when
// p/q = 4 a_child and PrecondViolated when the witness does not match a_child.
SurfaceData surface_cable(const SurfaceData& child, std::int64_t p, std::int64_t q, const Rational& a_child);

// Glues m1 copies of s1 to m2 copies of s2 along the swallow-follow torus,
// m_i = lcm(L1, L2) / L_i with L_i = |dS_i| q_i. Throws GluingMismatch when the
// boundary count of the result would not be integral.
SurfaceData surface_sum(const SurfaceData& s1, const SurfaceData& s2);

// Doubles chi and the boundary count; the ratio is unchanged.
SurfaceData frontier_replacement(const SurfaceData& s);

struct SSClassCheck {
  int residue = 0;
  Rational four_a;
  Rational slope;
  Rational two_b;
  Rational ratio;

  bool slope_ok() const { return four_a == slope; }
  bool ratio_ok() const { return two_b == ratio; }
  bool pass() const { return slope_ok() && ratio_ok(); }
};

struct SSNodeCheck {
  std::string expr;
  SurfaceData witness;
  std::vector<SSClassCheck> classes;

  bool pass() const;
};

struct SSReport {
  std::string expr;
  std::optional<SurfaceData> witness;  // empty when a subexpression already failed
  std::vector<SSNodeCheck> nodes;      // post-order, top node last when reached

  bool pass() const;
};

// delta of a subexpression (fitted or predicted).
using DeltaSource = std::function<QuasiPoly(const KnotExpr&)>;

// Builds the witness surface along the expression tree and checks, at every
// node, 4 a_i = slope and 2 b_i = chi / (|dS| q) for each residue class. The
// top node is checked against `delta`. Unknot summands are removed first;
// throws UnknotLeaf when nothing else is left.
SSReport verify_ss(const KnotExpr& k, const QuasiPoly& delta, const DeltaSource& sub_delta);

}  // namespace graphknot
