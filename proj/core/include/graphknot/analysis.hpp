#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "graphknot/cjones.hpp"
#include "graphknot/degree_fit.hpp"
#include "graphknot/knot_expr.hpp"
#include "graphknot/predict.hpp"
#include "graphknot/surfaces.hpp"

namespace graphknot {

struct AnalysisConfig {
  std::int64_t n_max = 16;
  int max_period = 6;
  int tail = 2;
  std::int64_t color_ceiling = kDefaultColorCeiling;
  unsigned threads = 0;  // 0: hardware concurrency
};

struct MembershipReport {
  std::string expr;
  bool trivial = false;  // the unknot
  std::optional<QuasiPoly> delta;
  ConditionDelta condition;
  std::optional<SignProfile> signs;
  std::optional<SSReport> ss;
  // Only with cross-checking: the predictor trace, or why it does not apply.
  std::optional<ExpressionPrediction> prediction;
  std::string prediction_note;

  bool pass() const;
};

// Sampling, fitting and checks over one shared Jones cache. Degree tables
// are memoized per canonical subexpression.
class Analyzer {
 public:
  explicit Analyzer(AnalysisConfig config = {}, std::shared_ptr<JonesCache> cache = std::make_shared<JonesCache>());

  const AnalysisConfig& config() const { return config_; }
  JonesCache& cache() { return *cache_; }

  // Throws ColorCeilingExceeded before any evaluation when sampling k up to
  // n_max would need a color above the ceiling.
  void check_ceiling(const KnotExpr& k) const;

  const std::vector<DegreeRow>& table(const KnotExpr& k);
  std::vector<Rational> dplus(const KnotExpr& k);
  Rational dplus_at(const KnotExpr& k, std::int64_t color);

  QuasiPoly fit(const KnotExpr& k);
  SignProfile signs(const KnotExpr& k);
  ExpressionPrediction predict(const KnotExpr& k,
                               std::function<void(const KnotExpr&, DeltaPrediction&)> tamper = {});
  MembershipReport membership(const KnotExpr& k, bool cross_check = false,
                              std::function<void(const KnotExpr&, DeltaPrediction&)> tamper = {});

 private:
  AnalysisConfig config_;
  std::shared_ptr<JonesCache> cache_;
  std::mutex tables_mutex_;
  std::map<std::string, std::vector<DegreeRow>> tables_;
};

}  // namespace graphknot
