#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace graphknot {

using Integer = mpz_class;
using Rational = mpq_class;

// Builds a canonical (reduced) rational num/den.
Rational make_rational(std::int64_t num, std::int64_t den = 1);
Rational make_rational(const Integer& num, const Integer& den);

// Always "num/den" with den > 0, e.g. "6/1", "-7/2".
std::string to_fraction_string(const Rational& r);

// Accepts "num/den" or a bare integer. Throws ValidationError on malformed input.
Rational parse_fraction(std::string_view text);

// Throws InvariantViolation when the value does not fit.
std::int64_t to_int64(const Integer& z);

bool is_integer(const Rational& r);

// floor and ceiling of an exact rational.
Integer floor_of(const Rational& r);
Integer ceil_of(const Rational& r);

}  // namespace graphknot
