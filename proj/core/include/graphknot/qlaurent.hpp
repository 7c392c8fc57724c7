#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "graphknot/rational.hpp"

namespace graphknot {

// An exponent of q counted in quarters: q^{5/2} is QExp{10}.
struct QExp {
  std::int64_t quarters = 0;

  Rational degree() const { return make_rational(quarters, 4); }

  friend auto operator<=>(const QExp&, const QExp&) = default;
};

// Sparse Laurent polynomial in q^{1/4} with arbitrary-precision integer
// coefficients. Terms are kept sorted by ascending exponent; no stored
// coefficient is zero, so the zero polynomial has no terms. Values are
// immutable once built and safe to share across threads.
class LaurentPoly {
 public:
  struct Term {
    QExp exp;
    Integer coeff;

    friend bool operator==(const Term&, const Term&) = default;
  };

  LaurentPoly() = default;

  static LaurentPoly constant(const Integer& c);
  static LaurentPoly monomial(const Integer& c, QExp exp);
  // Sorts, merges equal exponents and drops zero coefficients.
  static LaurentPoly from_terms(std::vector<Term> terms);

  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  std::span<const Term> terms() const noexcept { return terms_; }
  Integer coefficient(QExp exp) const;

  // Multiplies by q^{shift/4}.
  LaurentPoly shifted(QExp shift) const;
  LaurentPoly negated() const;

  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

 private:
  explicit LaurentPoly(std::vector<Term> sorted) : terms_(std::move(sorted)) {}

  std::vector<Term> terms_;
};

LaurentPoly add(const LaurentPoly& p, const LaurentPoly& r);
LaurentPoly sub(const LaurentPoly& p, const LaurentPoly& r);
LaurentPoly mul(const LaurentPoly& p, const LaurentPoly& r);

// Returns s with s * d == p. Runs long division from the top exponent and
// throws NotDivisible as soon as a step is not exact or a remainder survives.
LaurentPoly exact_div(const LaurentPoly& p, const LaurentPoly& d);

struct DegreeData {
  Rational d_plus;
  Rational d_minus;
  int lead_sign = 1;
  Integer lead_coeff;
};

// Throws ZeroPolynomial for p == 0.
DegreeData degree_data(const LaurentPoly& p);

// q -> q^{-1}.
LaurentPoly mirror(const LaurentPoly& p);

Integer eval_at_one(const LaurentPoly& p);

inline LaurentPoly operator+(const LaurentPoly& p, const LaurentPoly& r) { return add(p, r); }
inline LaurentPoly operator-(const LaurentPoly& p, const LaurentPoly& r) { return sub(p, r); }
inline LaurentPoly operator*(const LaurentPoly& p, const LaurentPoly& r) { return mul(p, r); }

// Canonical golden-file text: descending exponents, `c*q^(a/4)` terms with
// unit coefficients written bare, e.g. `-q^(18/4) + q^(10/4) + 2*q^(0/4)`.
// The zero polynomial is `0`.
std::string to_string(const LaurentPoly& p);

// Inverse of to_string. Throws SyntaxError on anything else.
LaurentPoly parse_laurent(std::string_view text);

}  // namespace graphknot
