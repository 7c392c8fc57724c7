#include "graphknot/degree_fit.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include "graphknot/errors.hpp"

namespace graphknot {
namespace {

std::size_t residue(std::int64_t n, int period) {
  return static_cast<std::size_t>(((n % period) + period) % period);
}

// Quadratic through three points with distinct abscissae.
QuasiClass interpolate(std::int64_t n1, const Rational& y1, std::int64_t n2, const Rational& y2,
                       std::int64_t n3, const Rational& y3) {
  const Rational s12 = (y2 - y1) / Rational(n2 - n1);
  const Rational s23 = (y3 - y2) / Rational(n3 - n2);
  QuasiClass q;
  q.a = (s23 - s12) / Rational(n3 - n1);
  q.b = s12 - q.a * Rational(n1 + n2);
  q.c = y1 - q.a * Rational(n1 * n1) - q.b * Rational(n1);
  return q;
}

Rational evaluate(const QuasiClass& q, std::int64_t n) {
  const Rational x(n);
  return q.a * x * x + q.b * x + q.c;
}

}  // namespace

const QuasiClass& QuasiPoly::at(std::int64_t n) const { return classes.at(residue(n, period)); }

Rational QuasiPoly::value(std::int64_t n) const { return evaluate(at(n), n); }

bool QuasiPoly::same_function(const QuasiPoly& other) const {
  const std::int64_t span = std::lcm<std::int64_t>(period, other.period);
  for (std::int64_t i = 0; i < span; ++i) {
    if (!(at(i) == other.at(i))) return false;
  }
  return true;
}

QuasiPoly minimize_period(QuasiPoly qp) {
  for (int d = 1; d < qp.period; ++d) {
    if (qp.period % d != 0) continue;
    bool same = true;
    for (int i = d; i < qp.period && same; ++i) same = qp.classes[i] == qp.classes[i % d];
    if (same) {
      qp.classes.resize(static_cast<std::size_t>(d));
      qp.period = d;
      break;
    }
  }
  return qp;
}

std::vector<DegreeRow> degree_table(const KnotExpr& k, std::int64_t n_max, JonesCache* cache,
                                    const SamplingOptions& options) {
  if (n_max < 1) throw ValidationError("n_max must be >= 1");
  std::vector<DegreeRow> rows(static_cast<std::size_t>(n_max));
  auto compute = [&](std::int64_t n) {
    const DegreeData d = degree_data(jones(k, n, cache, options.color_ceiling));
    rows[static_cast<std::size_t>(n - 1)] = DegreeRow{n, d.d_plus, d.lead_sign};
  };

  unsigned workers = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.threads;
  workers = static_cast<unsigned>(std::min<std::int64_t>(workers, n_max));
  if (workers <= 1) {
    for (std::int64_t n = 1; n <= n_max; ++n) compute(n);
    return rows;
  }

  // Highest colors first: they populate the companion entries lower colors reuse.
  std::atomic<std::int64_t> next{n_max};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::int64_t n = next--; n >= 1; n = next--) {
        try {
          compute(n);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return rows;
}

std::vector<Rational> dplus_sequence(const KnotExpr& k, std::int64_t n_max, JonesCache* cache,
                                     const SamplingOptions& options) {
  std::vector<Rational> out;
  for (auto& row : degree_table(k, n_max, cache, options)) out.push_back(std::move(row.d_plus));
  return out;
}

QuasiPoly fit_quasipoly(std::span<const Rational> seq, int max_period, int tail, std::int64_t first_n) {
  if (max_period < 1 || tail < 0) throw ValidationError("max_period must be >= 1 and tail >= 0");
  const auto len = static_cast<std::int64_t>(seq.size());
  const std::int64_t last_n = first_n + len - 1;
  bool any_candidate = false;

  for (int period = 1; period <= max_period; ++period) {
    if (len / period < 3 + tail) break;  // the shortest class is too short from here on
    any_candidate = true;

    std::vector<QuasiClass> classes(static_cast<std::size_t>(period));
    std::int64_t first_good = first_n;
    bool fits = true;
    for (int r = 0; r < period && fits; ++r) {
      // Samples of this class, newest first.
      std::vector<std::int64_t> ns;
      for (std::int64_t n = last_n; n >= first_n; --n) {
        if (residue(n, period) == static_cast<std::size_t>(r)) ns.push_back(n);
      }
      auto y = [&](std::int64_t n) -> const Rational& { return seq[static_cast<std::size_t>(n - first_n)]; };
      const QuasiClass q = interpolate(ns[2], y(ns[2]), ns[1], y(ns[1]), ns[0], y(ns[0]));

      std::size_t agree = 3;
      while (agree < ns.size() && evaluate(q, ns[agree]) == y(ns[agree])) ++agree;
      if (agree < static_cast<std::size_t>(3 + tail)) {
        fits = false;
        break;
      }
      if (agree < ns.size()) first_good = std::max(first_good, ns[agree] + 1);
      classes[static_cast<std::size_t>(r)] = q;
    }
    if (!fits) continue;
    return minimize_period(QuasiPoly{period, std::move(classes), first_good, last_n});
  }

  if (!any_candidate) {
    throw NoFit("sequence of " + std::to_string(len) + " samples is too short for tail " + std::to_string(tail));
  }
  throw NoFit("no quasi-polynomial of period <= " + std::to_string(max_period) +
              " fits the final samples; increase n_max or max_period");
}

std::optional<QuasiPoly> fit_prestable(std::span<const Rational> seq, const QuasiPoly& stable, int max_period) {
  const std::int64_t count = stable.stabilization - 1;
  if (count < 3 || count > static_cast<std::int64_t>(seq.size())) return std::nullopt;
  try {
    QuasiPoly pre = fit_quasipoly(seq.first(static_cast<std::size_t>(count)), max_period, 0, 1);
    if (pre.stabilization != 1) return std::nullopt;
    return pre;
  } catch (const NoFit&) {
    return std::nullopt;
  }
}

std::vector<Rational> jones_slopes(const QuasiPoly& qp) {
  std::vector<Rational> out;
  for (const auto& c : qp.classes) out.push_back(4 * c.a);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

SignProfile sign_profile_from(std::vector<int> signs) {
  SignProfile profile;
  for (std::size_t i = 2; i < signs.size(); ++i) {
    const std::size_t ref = i % 2;  // index of color 1 or 2
    if (signs[i] != signs[ref]) {
      profile.fails_at = std::make_pair(static_cast<std::int64_t>(ref + 1), static_cast<std::int64_t>(i + 1));
      break;
    }
  }
  profile.signs = std::move(signs);
  return profile;
}

SignProfile sign_profile(const KnotExpr& k, std::int64_t n_max, JonesCache* cache, const SamplingOptions& options) {
  if (n_max < 2) throw ValidationError("sign profile needs n_max >= 2");
  std::vector<int> signs;
  for (const auto& row : degree_table(k, n_max, cache, options)) signs.push_back(row.lead_sign);
  return sign_profile_from(std::move(signs));
}

ConditionDelta check_condition_delta(const QuasiPoly& qp) {
  ConditionDelta cd;
  cd.period_at_most_two = qp.period <= 2;
  cd.a_constant = std::all_of(qp.classes.begin(), qp.classes.end(),
                              [&](const QuasiClass& c) { return c.a == qp.classes.front().a; });
  cd.four_a_integral = std::all_of(qp.classes.begin(), qp.classes.end(),
                                   [](const QuasiClass& c) { return is_integer(Rational(4 * c.a)); });
  cd.b_constant = std::all_of(qp.classes.begin(), qp.classes.end(),
                              [&](const QuasiClass& c) { return c.b == qp.classes.front().b; });
  cd.b_nonpositive = std::all_of(qp.classes.begin(), qp.classes.end(),
                                 [](const QuasiClass& c) { return c.b <= 0; });
  return cd;
}

}  // namespace graphknot
