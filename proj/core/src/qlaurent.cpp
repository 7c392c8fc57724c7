#include "graphknot/qlaurent.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>

#include "graphknot/errors.hpp"

namespace graphknot {
namespace {

using Term = LaurentPoly::Term;

// Dense buffers above this many slots fall back to sparse accumulation.
constexpr std::int64_t kDenseLimit = std::int64_t{1} << 24;

std::int64_t checked_add(std::int64_t x, std::int64_t y) {
  std::int64_t out;
  if (__builtin_add_overflow(x, y, &out)) {
    throw InvariantViolation("q-exponent overflow");
  }
  return out;
}

std::int64_t checked_sub(std::int64_t x, std::int64_t y) {
  std::int64_t out;
  if (__builtin_sub_overflow(x, y, &out)) {
    throw InvariantViolation("q-exponent overflow");
  }
  return out;
}

// gcd of all exponent gaps; 0 for a single term.
std::int64_t exponent_stride(std::span<const Term> terms) {
  std::int64_t g = 0;
  for (const auto& t : terms) {
    g = std::gcd(g, t.exp.quarters - terms.front().exp.quarters);
  }
  return g;
}

LaurentPoly scaled_shift(const LaurentPoly& p, const Integer& c, QExp shift) {
  std::vector<Term> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) {
    out.push_back({QExp{checked_add(t.exp.quarters, shift.quarters)}, t.coeff * c});
  }
  return LaurentPoly::from_terms(std::move(out));
}

LaurentPoly from_dense(const std::vector<Integer>& buf, std::int64_t low, std::int64_t stride) {
  std::vector<Term> out;
  for (std::size_t i = 0; i < buf.size(); ++i) {
    if (buf[i] != 0) {
      out.push_back({QExp{low + static_cast<std::int64_t>(i) * stride}, buf[i]});
    }
  }
  return LaurentPoly::from_terms(std::move(out));
}

LaurentPoly sparse_long_division(const LaurentPoly& p, const LaurentPoly& d) {
  std::map<std::int64_t, Integer> rem;
  for (const auto& t : p.terms()) rem.emplace(t.exp.quarters, t.coeff);
  const auto& top = d.terms().back();
  const std::int64_t d_low = d.terms().front().exp.quarters;
  const std::int64_t floor_exp = checked_add(p.terms().front().exp.quarters,
                                             checked_sub(top.exp.quarters, d_low));
  std::vector<Term> quotient;
  while (!rem.empty() && rem.rbegin()->first >= floor_exp) {
    const auto [e, c] = *rem.rbegin();
    if (!mpz_divisible_p(c.get_mpz_t(), top.coeff.get_mpz_t())) {
      throw NotDivisible("inexact coefficient quotient during long division");
    }
    Integer factor;
    mpz_divexact(factor.get_mpz_t(), c.get_mpz_t(), top.coeff.get_mpz_t());
    const std::int64_t qe = e - top.exp.quarters;
    for (const auto& t : d.terms()) {
      auto& slot = rem[qe + t.exp.quarters];
      slot -= factor * t.coeff;
      if (slot == 0) rem.erase(qe + t.exp.quarters);
    }
    quotient.push_back({QExp{qe}, factor});
  }
  if (!rem.empty()) {
    throw NotDivisible("nonzero remainder after long division");
  }
  return LaurentPoly::from_terms(std::move(quotient));
}

}  // namespace

LaurentPoly LaurentPoly::constant(const Integer& c) { return monomial(c, QExp{0}); }

LaurentPoly LaurentPoly::monomial(const Integer& c, QExp exp) {
  if (c == 0) return {};
  return LaurentPoly(std::vector<Term>{{exp, c}});
}

LaurentPoly LaurentPoly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& x, const Term& y) { return x.exp < y.exp; });
  std::vector<Term> merged;
  merged.reserve(terms.size());
  for (auto& t : terms) {
    if (!merged.empty() && merged.back().exp == t.exp) {
      merged.back().coeff += t.coeff;
    } else {
      if (!merged.empty() && merged.back().coeff == 0) merged.pop_back();
      merged.push_back(std::move(t));
    }
  }
  if (!merged.empty() && merged.back().coeff == 0) merged.pop_back();
  return LaurentPoly(std::move(merged));
}

Integer LaurentPoly::coefficient(QExp exp) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), exp,
                             [](const Term& t, QExp e) { return t.exp < e; });
  if (it != terms_.end() && it->exp == exp) return it->coeff;
  return 0;
}

LaurentPoly LaurentPoly::shifted(QExp shift) const {
  std::vector<Term> out = terms_;
  for (auto& t : out) t.exp.quarters = checked_add(t.exp.quarters, shift.quarters);
  return LaurentPoly(std::move(out));
}

LaurentPoly LaurentPoly::negated() const {
  std::vector<Term> out = terms_;
  for (auto& t : out) t.coeff = -t.coeff;
  return LaurentPoly(std::move(out));
}

LaurentPoly add(const LaurentPoly& p, const LaurentPoly& r) {
  std::vector<Term> out;
  out.reserve(p.size() + r.size());
  auto a = p.terms().begin();
  auto b = r.terms().begin();
  while (a != p.terms().end() || b != r.terms().end()) {
    if (b == r.terms().end() || (a != p.terms().end() && a->exp < b->exp)) {
      out.push_back(*a++);
    } else if (a == p.terms().end() || b->exp < a->exp) {
      out.push_back(*b++);
    } else {
      Integer c = a->coeff + b->coeff;
      if (c != 0) out.push_back({a->exp, std::move(c)});
      ++a;
      ++b;
    }
  }
  return LaurentPoly::from_terms(std::move(out));
}

LaurentPoly sub(const LaurentPoly& p, const LaurentPoly& r) { return add(p, r.negated()); }

LaurentPoly mul(const LaurentPoly& p, const LaurentPoly& r) {
  if (p.is_zero() || r.is_zero()) return {};
  if (p.size() == 1) return scaled_shift(r, p.terms()[0].coeff, p.terms()[0].exp);
  if (r.size() == 1) return scaled_shift(p, r.terms()[0].coeff, r.terms()[0].exp);

  const std::int64_t stride = std::gcd(exponent_stride(p.terms()), exponent_stride(r.terms()));
  const std::int64_t low = checked_add(p.terms().front().exp.quarters, r.terms().front().exp.quarters);
  const std::int64_t high = checked_add(p.terms().back().exp.quarters, r.terms().back().exp.quarters);
  const std::int64_t slots = (high - low) / stride + 1;
  const auto products = static_cast<std::int64_t>(p.size() * r.size());

  if (slots <= kDenseLimit && slots <= 16 * products) {
    std::vector<Integer> buf(static_cast<std::size_t>(slots));
    for (const auto& x : p.terms()) {
      for (const auto& y : r.terms()) {
        const auto idx = (x.exp.quarters + y.exp.quarters - low) / stride;
        mpz_addmul(buf[idx].get_mpz_t(), x.coeff.get_mpz_t(), y.coeff.get_mpz_t());
      }
    }
    return from_dense(buf, low, stride);
  }

  std::vector<Term> out;
  out.reserve(p.size() * r.size());
  for (const auto& x : p.terms()) {
    for (const auto& y : r.terms()) {
      out.push_back({QExp{x.exp.quarters + y.exp.quarters}, x.coeff * y.coeff});
    }
  }
  return LaurentPoly::from_terms(std::move(out));
}

LaurentPoly exact_div(const LaurentPoly& p, const LaurentPoly& d) {
  if (d.is_zero()) throw DivisionByZero("division by the zero polynomial");
  if (p.is_zero()) return {};

  if (d.size() == 1) {
    const auto& m = d.terms()[0];
    std::vector<Term> out;
    out.reserve(p.size());
    for (const auto& t : p.terms()) {
      if (!mpz_divisible_p(t.coeff.get_mpz_t(), m.coeff.get_mpz_t())) {
        throw NotDivisible("coefficient not divisible by monomial divisor");
      }
      Integer c;
      mpz_divexact(c.get_mpz_t(), t.coeff.get_mpz_t(), m.coeff.get_mpz_t());
      out.push_back({QExp{checked_sub(t.exp.quarters, m.exp.quarters)}, std::move(c)});
    }
    return LaurentPoly::from_terms(std::move(out));
  }

  const std::int64_t p_low = p.terms().front().exp.quarters;
  const std::int64_t p_high = p.terms().back().exp.quarters;
  const std::int64_t d_low = d.terms().front().exp.quarters;
  const std::int64_t d_high = d.terms().back().exp.quarters;
  if (p_high - p_low < d_high - d_low) {
    throw NotDivisible("dividend spans fewer exponents than the divisor");
  }

  const std::int64_t stride = std::gcd(exponent_stride(p.terms()), exponent_stride(d.terms()));
  const std::int64_t slots = (p_high - p_low) / stride + 1;
  if (slots > kDenseLimit) return sparse_long_division(p, d);

  std::vector<Integer> rem(static_cast<std::size_t>(slots));
  for (const auto& t : p.terms()) rem[(t.exp.quarters - p_low) / stride] = t.coeff;

  // Offsets of each divisor term below the divisor's top term, in slots.
  std::vector<std::pair<std::int64_t, const Integer*>> below;
  below.reserve(d.size());
  for (const auto& t : d.terms()) below.emplace_back((d_high - t.exp.quarters) / stride, &t.coeff);
  const Integer& lead = d.terms().back().coeff;
  const std::int64_t d_span = (d_high - d_low) / stride;

  std::vector<Term> quotient;
  Integer factor;
  for (std::int64_t idx = slots - 1; idx >= d_span; --idx) {
    if (rem[idx] == 0) continue;
    if (!mpz_divisible_p(rem[idx].get_mpz_t(), lead.get_mpz_t())) {
      throw NotDivisible("inexact coefficient quotient during long division");
    }
    mpz_divexact(factor.get_mpz_t(), rem[idx].get_mpz_t(), lead.get_mpz_t());
    for (const auto& [off, c] : below) {
      mpz_submul(rem[idx - off].get_mpz_t(), factor.get_mpz_t(), c->get_mpz_t());
    }
    quotient.push_back({QExp{p_low + idx * stride - d_high}, factor});
  }
  for (std::int64_t idx = 0; idx < d_span; ++idx) {
    if (rem[idx] != 0) throw NotDivisible("nonzero remainder after long division");
  }
  return LaurentPoly::from_terms(std::move(quotient));
}

DegreeData degree_data(const LaurentPoly& p) {
  if (p.is_zero()) throw ZeroPolynomial("degree of the zero polynomial");
  const auto& top = p.terms().back();
  return DegreeData{top.exp.degree(), p.terms().front().exp.degree(), sgn(top.coeff), top.coeff};
}

LaurentPoly mirror(const LaurentPoly& p) {
  std::vector<Term> out(p.terms().begin(), p.terms().end());
  for (auto& t : out) t.exp.quarters = -t.exp.quarters;
  return LaurentPoly::from_terms(std::move(out));
}

Integer eval_at_one(const LaurentPoly& p) {
  Integer sum = 0;
  for (const auto& t : p.terms()) sum += t.coeff;
  return sum;
}

std::string to_string(const LaurentPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const bool negative = it->coeff < 0;
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    const Integer magnitude = abs(it->coeff);
    if (magnitude != 1) out += magnitude.get_str() + "*";
    out += "q^(" + std::to_string(it->exp.quarters) + "/4)";
    first = false;
  }
  return out;
}

LaurentPoly parse_laurent(std::string_view text) {
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto expect = [&](std::string_view token) {
    if (text.substr(pos, token.size()) != token) {
      throw SyntaxError("expected '" + std::string(token) + "'", pos);
    }
    pos += token.size();
  };
  auto digits = [&] {
    const std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) throw SyntaxError("expected digits", pos);
    return std::string(text.substr(start, pos - start));
  };

  skip_ws();
  if (text.substr(pos) == "0") return {};

  std::vector<Term> terms;
  bool negative = false;
  if (pos < text.size() && text[pos] == '-') {
    negative = true;
    ++pos;
  }
  while (true) {
    skip_ws();
    Integer coeff = 1;
    if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      coeff = Integer(digits());
      expect("*");
    }
    expect("q^(");
    bool neg_exp = false;
    if (pos < text.size() && text[pos] == '-') {
      neg_exp = true;
      ++pos;
    }
    const std::string e = digits();
    expect("/4)");
    Integer exp(e);
    if (neg_exp) exp = -exp;
    terms.push_back({QExp{to_int64(exp)}, negative ? Integer(-coeff) : coeff});

    skip_ws();
    if (pos == text.size()) break;
    if (text[pos] == '+') {
      negative = false;
    } else if (text[pos] == '-') {
      negative = true;
    } else {
      throw SyntaxError("expected '+' or '-'", pos);
    }
    ++pos;
  }
  return LaurentPoly::from_terms(std::move(terms));
}

}  // namespace graphknot
