#include "graphknot/analysis.hpp"

#include "graphknot/errors.hpp"

namespace graphknot {

bool MembershipReport::pass() const {
  if (trivial) return true;
  return condition.holds() && signs && signs->holds() && ss && ss->pass() &&
         (!prediction || prediction->all_agree());
}

Analyzer::Analyzer(AnalysisConfig config, std::shared_ptr<JonesCache> cache)
    : config_(config), cache_(std::move(cache)) {
  if (config_.n_max < 4) throw ValidationError("n_max must be >= 4");
  if (config_.max_period < 1) throw ValidationError("max_period must be >= 1");
  if (config_.tail < 0) throw ValidationError("tail must be >= 0");
  if (config_.color_ceiling < 1) throw ValidationError("color ceiling must be >= 1");
  if (!cache_) cache_ = std::make_shared<JonesCache>();
}

void Analyzer::check_ceiling(const KnotExpr& k) const {
  const std::int64_t need = max_required_color(k, config_.n_max);
  if (need > config_.color_ceiling) {
    throw ColorCeilingExceeded(format(k) + " up to n = " + std::to_string(config_.n_max) + " needs color " +
                               std::to_string(need) + ", above the ceiling " + std::to_string(config_.color_ceiling));
  }
}

const std::vector<DegreeRow>& Analyzer::table(const KnotExpr& k) {
  const std::string key = format(k);
  {
    std::lock_guard lock(tables_mutex_);
    if (auto it = tables_.find(key); it != tables_.end()) return it->second;
  }
  check_ceiling(k);
  auto rows = degree_table(k, config_.n_max, cache_.get(), SamplingOptions{config_.color_ceiling, config_.threads});
  std::lock_guard lock(tables_mutex_);
  return tables_.try_emplace(key, std::move(rows)).first->second;
}

std::vector<Rational> Analyzer::dplus(const KnotExpr& k) {
  std::vector<Rational> out;
  for (const auto& row : table(k)) out.push_back(row.d_plus);
  return out;
}

Rational Analyzer::dplus_at(const KnotExpr& k, std::int64_t color) {
  const auto& rows = table(k);
  if (color >= 1 && color <= static_cast<std::int64_t>(rows.size())) return rows[static_cast<std::size_t>(color - 1)].d_plus;
  return degree_data(jones(k, color, cache_.get(), config_.color_ceiling)).d_plus;
}

QuasiPoly Analyzer::fit(const KnotExpr& k) {
  const auto seq = dplus(k);
  return fit_quasipoly(seq, config_.max_period, config_.tail);
}

SignProfile Analyzer::signs(const KnotExpr& k) {
  std::vector<int> s;
  for (const auto& row : table(k)) s.push_back(row.lead_sign);
  return sign_profile_from(std::move(s));
}

ExpressionPrediction Analyzer::predict(const KnotExpr& k, std::function<void(const KnotExpr&, DeltaPrediction&)> tamper) {
  PredictionSources sources;
  sources.samples = [this](const KnotExpr& e) { return dplus(e); };
  sources.degree = [this](const KnotExpr& e, std::int64_t color) { return dplus_at(e, color); };
  sources.tamper = std::move(tamper);
  return predict_expression(k, sources);
}

MembershipReport Analyzer::membership(const KnotExpr& k, bool cross_check,
                                      std::function<void(const KnotExpr&, DeltaPrediction&)> tamper) {
  MembershipReport report;
  report.expr = format(k);
  if (simplify_unknots(k).is_unknot()) {
    report.trivial = true;
    return report;
  }
  report.delta = fit(k);
  report.condition = check_condition_delta(*report.delta);
  report.signs = signs(k);
  report.ss = verify_ss(k, *report.delta, [this](const KnotExpr& sub) { return fit(sub); });
  if (cross_check) {
    try {
      report.prediction = predict(k, std::move(tamper));
    } catch (const PrecondViolated& e) {
      report.prediction_note = std::string("no predictor applies: ") + e.what();
    }
  }
  return report;
}

}  // namespace graphknot
