#include "graphknot/rational.hpp"

#include <cctype>

#include "graphknot/errors.hpp"

namespace graphknot {

Rational make_rational(std::int64_t num, std::int64_t den) {
  if (den == 0) {
    throw DivisionByZero("rational with zero denominator");
  }
  Rational r(Integer(static_cast<long>(num)), Integer(static_cast<long>(den)));
  r.canonicalize();
  return r;
}

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) {
    throw DivisionByZero("rational with zero denominator");
  }
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_fraction_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational parse_fraction(std::string_view text) {
  auto valid_int = [](std::string_view s) {
    if (!s.empty() && s.front() == '-') s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s) {
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
  };
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? "1" : text.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den.front() == '-') {
    throw ValidationError("malformed fraction '" + std::string(text) + "'");
  }
  const Integer d{std::string(den)};
  if (d == 0) {
    throw DivisionByZero("fraction '" + std::string(text) + "' has zero denominator");
  }
  return make_rational(Integer{std::string(num)}, d);
}

std::int64_t to_int64(const Integer& z) {
  if (!z.fits_slong_p()) {
    throw InvariantViolation("integer " + z.get_str() + " exceeds 64 bits");
  }
  return z.get_si();
}

bool is_integer(const Rational& r) { return r.get_den() == 1; }

Integer floor_of(const Rational& r) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return out;
}

Integer ceil_of(const Rational& r) {
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return out;
}

}  // namespace graphknot
