#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <utility>

#include "graphknot/knot_expr.hpp"
#include "graphknot/qlaurent.hpp"

namespace graphknot {

inline constexpr std::int64_t kDefaultColorCeiling = 512;

// Quantum integer [n] = J_{U,n}, n >= 1.
LaurentPoly jones_unknot(std::int64_t n);

// Morton's normalized colored Jones polynomial J'_{T(a,b),m}, m >= 0.
// Negative a is evaluated for |a| and mirrored.
LaurentPoly normalized_torus(std::int64_t a, std::int64_t b, std::int64_t m);

// J_{T(a,b),n} = [n] * J'_{T(a,b),n-1}.
LaurentPoly jones_torus(std::int64_t a, std::int64_t b, std::int64_t n);

// Returns J_{K,m} for the companion K at any color m >= 1.
using ColorOracle = std::function<LaurentPoly(std::int64_t color)>;

// Cabling sum
//   J_{K_{p,q},n} = q^{pq(n^2-1)/4} sum_{k in S_n} q^{-pk(qk+1)} J_{K,2qk+1}
// with J_{K,-m} = -J_{K,m}.
LaurentPoly jones_cable(std::int64_t p, std::int64_t q, const ColorOracle& companion, std::int64_t n);

// J_{K1#K2,n} = J_{K1,n} J_{K2,n} / [n]; both inputs at color n.
LaurentPoly jones_sum(const LaurentPoly& left, const LaurentPoly& right, std::int64_t n);

// Memo table keyed by (canonical subexpression text, color). Lookups take a
// shared lock and insertions an exclusive one; two workers racing to insert
// the same key store equal values, so the loser is simply dropped.
class JonesCache {
 public:
  static constexpr int kFormatVersion = 1;

  std::optional<LaurentPoly> lookup(const std::string& expr, std::int64_t color) const;
  void insert(const std::string& expr, std::int64_t color, LaurentPoly value);
  std::size_t size() const;
  void clear();

  // Text file: a header line "graphknot-jones-cache <version>", then one
  // "<expr>\t<color>\t<polynomial>" line per entry.
  void save(const std::filesystem::path& path) const;
  // Returns false (and leaves the cache untouched) when the file is missing
  // or carries another format version.
  bool load(const std::filesystem::path& path);

 private:
  mutable std::shared_mutex mutex_;
  std::map<std::pair<std::string, std::int64_t>, LaurentPoly> table_;
};

// Colored Jones polynomial of any expression at color n >= 1 by structural
// recursion. A null cache disables memoization. Throws ColorCeilingExceeded
// when any intermediate color exceeds color_ceiling.
LaurentPoly jones(const KnotExpr& k, std::int64_t n, JonesCache* cache = nullptr,
                  std::int64_t color_ceiling = kDefaultColorCeiling);

// Sign of the leading coefficient of J_{K,n}.
int eps(const KnotExpr& k, std::int64_t n, JonesCache* cache = nullptr,
        std::int64_t color_ceiling = kDefaultColorCeiling);

}  // namespace graphknot
