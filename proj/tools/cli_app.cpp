#include "cli_app.hpp"

#include <algorithm>
#include <filesystem>
#include <memory>
#include <optional>

#include <CLI11.hpp>

#include "graphknot/analysis.hpp"
#include "graphknot/errors.hpp"
#include "graphknot/json.hpp"

namespace graphknot::cli {
namespace {

struct RunConfig {
  std::int64_t n_max = 16;
  int max_period = 6;
  int tail = 2;
  std::int64_t color_ceiling = kDefaultColorCeiling;
  std::string output;
  std::string cache_path;
  bool single_thread = false;
};

std::string frac(const Rational& r) { return to_fraction_string(r); }

std::string describe(const QuasiClass& c) {
  return frac(c.a) + " n^2 + " + frac(c.b) + " n + " + frac(c.c);
}

class Session {
 public:
  Session(const RunConfig& config, std::ostream& out, std::ostream& err, const Hooks& hooks)
      : config_(config), out_(out), err_(err), hooks_(hooks) {
    auto cache = std::make_shared<JonesCache>();
    if (!config.cache_path.empty() && std::filesystem::exists(config.cache_path) && !cache->load(config.cache_path)) {
      err_ << "warning: ignoring cache " << config.cache_path << " (unknown format version)\n";
    }
    AnalysisConfig ac;
    ac.n_max = config.n_max;
    ac.max_period = config.max_period;
    ac.tail = config.tail;
    ac.color_ceiling = config.color_ceiling;
    ac.threads = config.single_thread ? 1 : 0;
    analyzer_ = std::make_unique<Analyzer>(ac, std::move(cache));
  }

  ~Session() {
    if (config_.cache_path.empty()) return;
    try {
      analyzer_->cache().save(config_.cache_path);
    } catch (const std::exception& e) {
      err_ << "warning: " << e.what() << '\n';
    }
  }

  bool tsv(bool default_tsv) const { return config_.output.empty() ? default_tsv : config_.output == "tsv"; }

  void emit(const Json& j) { out_ << j.dump(2) << '\n'; }

  int jones_cmd(const KnotExpr& k, std::int64_t n) {
    const std::int64_t need = max_required_color(k, n);
    if (need > config_.color_ceiling) {
      throw ColorCeilingExceeded("color " + std::to_string(need) + " needed, above the ceiling " +
                                 std::to_string(config_.color_ceiling));
    }
    const LaurentPoly p = jones(k, n, &analyzer_->cache(), config_.color_ceiling);
    if (tsv(true)) {
      out_ << to_string(p) << '\n';
    } else {
      emit(Json{{"expr", format(k)}, {"n", n}, {"poly", to_string(p)}});
    }
    return kExitOk;
  }

  int dplus_cmd(const KnotExpr& k) {
    const auto& rows = analyzer_->table(k);
    if (tsv(true)) {
      out_ << "n\td_plus\tlead_sign\n";
      for (const auto& r : rows) out_ << r.n << '\t' << frac(r.d_plus) << '\t' << r.lead_sign << '\n';
    } else {
      emit(Json{{"expr", format(k)}, {"rows", to_json(rows)}});
    }
    return kExitOk;
  }

  int fit_cmd(const KnotExpr& k) {
    const QuasiPoly qp = analyzer_->fit(k);
    warn_if_late(qp);
    if (tsv(false)) {
      out_ << "residue\ta\tb\tc\n";
      for (int r = 0; r < qp.period; ++r) {
        const auto& c = qp.classes[static_cast<std::size_t>(r)];
        out_ << r << '\t' << frac(c.a) << '\t' << frac(c.b) << '\t' << frac(c.c) << '\n';
      }
    } else {
      Json j{{"expr", format(k)}};
      j.update(to_json(qp));
      emit(j);
    }
    return kExitOk;
  }

  int slopes_cmd(const KnotExpr& k) {
    const QuasiPoly qp = analyzer_->fit(k);
    warn_if_late(qp);
    const auto slopes = jones_slopes(qp);
    if (tsv(false)) {
      for (const auto& s : slopes) out_ << frac(s) << '\n';
    } else {
      Json arr = Json::array();
      for (const auto& s : slopes) arr.push_back(frac(s));
      emit(Json{{"expr", format(k)}, {"slopes", arr}});
    }
    return kExitOk;
  }

  int sign_cmd(const KnotExpr& k) {
    const SignProfile profile = analyzer_->signs(k);
    if (tsv(false)) {
      out_ << "n\tlead_sign\n";
      for (std::size_t i = 0; i < profile.signs.size(); ++i) out_ << i + 1 << '\t' << profile.signs[i] << '\n';
    } else {
      Json j{{"expr", format(k)}};
      j.update(to_json(profile));
      emit(j);
    }
    return profile.holds() ? kExitOk : kExitCheckFailed;
  }

  int predict_cmd(const KnotExpr& k) {
    const ExpressionPrediction p = analyzer_->predict(k, hooks_.tamper);
    if (tsv(false)) {
      out_ << "expr\trule\tcase\tvalid_from\tagrees\n";
      for (const auto& s : p.trace) {
        out_ << s.expr << '\t' << s.rule << '\t' << (s.prediction.case_tag ? std::string(to_string(*s.prediction.case_tag)) : "-") << '\t'
             << (s.prediction.valid_from ? std::to_string(*s.prediction.valid_from) : "-") << '\t'
             << (s.agrees ? "yes" : "no") << '\n';
      }
    } else {
      Json j{{"expr", format(k)}};
      j.update(to_json(p));
      emit(j);
    }
    return p.all_agree() ? kExitOk : kExitCheckFailed;
  }

  int verify_cmd(const KnotExpr& k, bool cross_check) {
    const MembershipReport m = analyzer_->membership(k, cross_check, hooks_.tamper);
    if (m.delta) warn_if_late(*m.delta);
    if (tsv(false)) {
      out_ << "check\tresult\n";
      if (m.trivial) {
        out_ << "unknot\tPASS\n";
      } else {
        out_ << "condition_delta\t" << (m.condition.holds() ? "PASS" : "FAIL") << '\n';
        out_ << "sign_condition\t" << (m.signs->holds() ? "PASS" : "FAIL") << '\n';
        for (const auto& node : m.ss->nodes) {
          for (const auto& c : node.classes) {
            out_ << "ss " << node.expr << " residue " << c.residue << '\t' << (c.pass() ? "PASS" : "FAIL") << '\n';
          }
        }
        if (m.prediction) out_ << "predictor\t" << (m.prediction->all_agree() ? "PASS" : "FAIL") << '\n';
      }
    } else {
      emit(to_json(m));
    }
    return m.pass() ? kExitOk : kExitCheckFailed;
  }

  int example_gap_cmd(std::int64_t q) {
    if (q < 2) throw ValidationError("example-gap needs q >= 2");
    const KnotExpr inner = KnotExpr::cable(6 * q - 1, q, KnotExpr::torus(3, 2));
    const KnotExpr k = KnotExpr::cable(12 * q * q - 1, 2, inner);
    const auto& rows = analyzer_->table(k);
    const ExpressionPrediction pred = analyzer_->predict(k, hooks_.tamper);
    const QuasiPoly& stable = pred.top.quasi;
    std::vector<Rational> seq;
    for (const auto& r : rows) seq.push_back(r.d_plus);

    const Rational Q(q);
    const QuasiClass pre_expected{(12 * Q * Q - 1) / 2, 0, -(12 * Q * Q - 1) / 2};
    const QuasiClass stable_expected{6 * Q * Q, (1 - 2 * Q) / 2, -6 * Q * Q + Q - Rational(1, 2)};
    const std::int64_t expected_crossover = 2 * q - 1;
    auto eval = [](const QuasiClass& c, std::int64_t n) -> Rational { return c.a * n * n + c.b * n + c.c; };
    const auto crossover = agreement_start(stable, seq);

    // At n = 2q-2 both pieces reach the same top degree and the leading
    // terms cancel, so that row matches neither piece.
    struct Row {
      std::int64_t n;
      Rational d_plus;
      std::string piece;
      Rational deficit;
    };
    std::vector<Row> table;
    bool pass = stable.period == 1 && stable.classes.front() == stable_expected && crossover == expected_crossover;
    std::int64_t pre_end = 0;
    for (const auto& r : rows) {
      const Rational pre = eval(pre_expected, r.n);
      const Rational post = eval(stable_expected, r.n);
      Row row{r.n, r.d_plus, "", 0};
      if (crossover && r.n >= *crossover) {
        row.piece = "stable";
      } else if (r.d_plus == pre) {
        row.piece = "pre";
        if (pre_end == r.n - 1) pre_end = r.n;
      } else {
        row.piece = "tie";
        row.deficit = std::max(pre, post) - r.d_plus;
      }
      if (r.n < expected_crossover - 1) pass = pass && row.piece == "pre";
      if (r.n == expected_crossover - 1) pass = pass && (row.piece == "pre" || pre == post);
      table.push_back(std::move(row));
    }
    std::optional<QuasiPoly> prestable;
    if (pre_end >= 3) {
      prestable = fit_quasipoly(std::span<const Rational>(seq).first(static_cast<std::size_t>(pre_end)), 1, 0);
    }

    if (tsv(true)) {
      out_ << "n\td_plus\tdelta\tpiece\n";
      for (const auto& r : table) {
        out_ << r.n << '\t' << frac(r.d_plus) << '\t' << frac(stable.value(r.n)) << '\t' << r.piece;
        if (r.piece == "tie") out_ << " (-" << frac(r.deficit) << ")";
        out_ << '\n';
      }
      out_ << "# knot\t" << format(k) << '\n';
      out_ << "# pre\t" << (prestable ? describe(prestable->classes.front()) : "-") << '\n';
      out_ << "# stable\t" << describe(stable.classes.front()) << '\n';
      out_ << "# crossover\t" << (crossover ? std::to_string(*crossover) : "-") << "\t2q-1 = " << expected_crossover
           << '\n';
      out_ << "# result\t" << (pass ? "PASS" : "FAIL") << '\n';
    } else {
      Json rows_json = Json::array();
      for (const auto& r : table) {
        Json j{{"n", r.n}, {"d_plus", frac(r.d_plus)}, {"delta", frac(stable.value(r.n))}, {"piece", r.piece}};
        if (r.piece == "tie") j["deficit"] = frac(r.deficit);
        rows_json.push_back(std::move(j));
      }
      emit(Json{{"q", q},
                {"expr", format(k)},
                {"table", rows_json},
                {"prestable", prestable ? to_json(*prestable) : Json(nullptr)},
                {"stable", to_json(pred.top)},
                {"crossover", crossover ? Json(*crossover) : Json(nullptr)},
                {"expected_crossover", expected_crossover},
                {"pass", pass}});
    }
    return pass ? kExitOk : kExitCheckFailed;
  }

 private:
  void warn_if_late(const QuasiPoly& qp) {
    const std::int64_t stable_count = config_.n_max - qp.stabilization + 1;
    if (qp.stabilization > 1 && stable_count < qp.period * (3 + config_.tail) + config_.tail) {
      err_ << "warning: stabilization at n = " << qp.stabilization << " is within " << config_.tail
           << " samples of the minimum the fit needs at n_max = " << config_.n_max << "; consider a larger --n-max\n";
    }
  }

  RunConfig config_;
  std::ostream& out_;
  std::ostream& err_;
  const Hooks& hooks_;
  std::unique_ptr<Analyzer> analyzer_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Hooks& hooks) {
  CLI::App app{"Colored Jones polynomials, degree quasi-polynomials and slope checks for graph knots", "graphknot"};
  app.require_subcommand(1);

  RunConfig config;
  auto* n_max_opt = app.add_option("--n-max", config.n_max, "Largest sampled color (>= 4)");
  app.add_option("--max-period", config.max_period, "Largest quasi-polynomial period tried");
  app.add_option("--tail", config.tail, "Extra samples per class a fit must reproduce");
  app.add_option("--color-ceiling", config.color_ceiling, "Largest intermediate color allowed");
  app.add_option("--output", config.output, "Output format")->check(CLI::IsMember({"json", "tsv"}));
  app.add_option("--cache", config.cache_path, "Persisted Jones cache file");
  app.add_flag("--single-thread", config.single_thread, "Evaluate colors serially");

  std::string expr_text;
  std::int64_t color = 1;
  std::int64_t gap_q = 4;
  bool cross_check = false;

  auto add_expr = [&](CLI::App* sub) {
    sub->add_option("expr", expr_text, "Knot expression, e.g. \"C(7,2; T(3,2))\"")->required();
    sub->fallthrough();
    return sub;
  };
  auto* jones_cmd = add_expr(app.add_subcommand("jones", "Colored Jones polynomial at one color"));
  jones_cmd->add_option("--n", color, "Color")->required();
  auto* dplus_cmd = add_expr(app.add_subcommand("dplus", "Degree table n, d_plus, lead_sign"));
  auto* fit_cmd = add_expr(app.add_subcommand("fit", "Fitted degree quasi-polynomial"));
  auto* slopes_cmd = add_expr(app.add_subcommand("slopes", "Jones slopes"));
  auto* sign_cmd = add_expr(app.add_subcommand("sign", "Leading-sign profile"));
  auto* predict_cmd = add_expr(app.add_subcommand("predict", "Closed-form degree prediction per node"));
  auto* verify_cmd = add_expr(app.add_subcommand("verify-ssc", "Slope, sign and surface checks"));
  verify_cmd->add_flag("--cross-check", cross_check, "Also cross-check the closed-form predictors");
  auto* gap_cmd = app.add_subcommand("example-gap", "Degree table of C(12q^2-1,2; C(6q-1,q; T(3,2)))");
  gap_cmd->add_option("--q", gap_q, "Inner cabling parameter q >= 2");
  gap_cmd->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitError;
  }

  try {
    if (gap_cmd->parsed() && n_max_opt->count() == 0) config.n_max = std::max<std::int64_t>(2 * gap_q + 2, 4);
    Session session(config, out, err, hooks);
    if (gap_cmd->parsed()) return session.example_gap_cmd(gap_q);

    const KnotExpr k = parse_knot(expr_text);
    if (jones_cmd->parsed()) return session.jones_cmd(k, color);
    if (dplus_cmd->parsed()) return session.dplus_cmd(k);
    if (fit_cmd->parsed()) return session.fit_cmd(k);
    if (slopes_cmd->parsed()) return session.slopes_cmd(k);
    if (sign_cmd->parsed()) return session.sign_cmd(k);
    if (predict_cmd->parsed()) return session.predict_cmd(k);
    if (verify_cmd->parsed()) return session.verify_cmd(k, cross_check);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace graphknot::cli
