#include "graphknot/json.hpp"

#include "graphknot/errors.hpp"

namespace graphknot {
namespace {

std::string frac(const Rational& r) { return to_fraction_string(r); }

Json opt_frac(const std::optional<Rational>& r) { return r ? Json(frac(*r)) : Json(nullptr); }

void put_quasi(Json& j, const QuasiPoly& qp) {
  j["period"] = qp.period;
  Json classes = Json::array();
  for (int r = 0; r < qp.period; ++r) {
    const QuasiClass& c = qp.classes.at(static_cast<std::size_t>(r));
    classes.push_back(Json{{"residue", r}, {"a", frac(c.a)}, {"b", frac(c.b)}, {"c", frac(c.c)}});
  }
  j["classes"] = std::move(classes);
  j["stabilization"] = qp.stabilization;
  j["n_max"] = qp.n_max;
}

}  // namespace

Json to_json(const QuasiPoly& qp) {
  Json j = Json::object();
  put_quasi(j, qp);
  return j;
}

Json to_json(const DeltaPrediction& d) {
  Json j = Json::object();
  put_quasi(j, d.quasi);
  j["case"] = d.case_tag ? Json(std::string(to_string(*d.case_tag))) : Json(nullptr);
  j["C_sigma"] = Json{{"even", opt_frac(d.c_sigma[0])}, {"odd", opt_frac(d.c_sigma[1])}};
  j["valid_from"] = d.valid_from ? Json(*d.valid_from) : Json(nullptr);
  return j;
}

Json to_json(const SurfaceData& s) {
  return Json{{"slope", frac(s.slope)},
              {"boundary_count", s.boundary_count},
              {"euler", s.euler},
              {"ratio", frac(s.ratio())},
              {"provenance", s.provenance}};
}

Json to_json(const SSReport& r) {
  Json nodes = Json::array();
  for (const auto& n : r.nodes) {
    Json classes = Json::array();
    for (const auto& c : n.classes) {
      classes.push_back(Json{{"residue", c.residue},
                             {"4a", frac(c.four_a)},
                             {"slope", frac(c.slope)},
                             {"2b", frac(c.two_b)},
                             {"ratio", frac(c.ratio)},
                             {"pass", c.pass()}});
    }
    nodes.push_back(Json{{"expr", n.expr}, {"surface", to_json(n.witness)}, {"classes", std::move(classes)},
                         {"pass", n.pass()}});
  }
  return Json{{"expr", r.expr},
              {"surface", r.witness ? to_json(*r.witness) : Json(nullptr)},
              {"nodes", std::move(nodes)},
              {"pass", r.pass()}};
}

Json to_json(const SignProfile& s) {
  Json j{{"signs", s.signs}, {"holds", s.holds()}};
  j["fails_at"] = s.fails_at ? Json::array({s.fails_at->first, s.fails_at->second}) : Json(nullptr);
  return j;
}

Json to_json(const ConditionDelta& c) {
  return Json{{"period_at_most_two", c.period_at_most_two},
              {"a_constant", c.a_constant},
              {"four_a_integral", c.four_a_integral},
              {"b_constant", c.b_constant},
              {"b_nonpositive", c.b_nonpositive},
              {"holds", c.holds()}};
}

Json to_json(const ExpressionPrediction& p) {
  Json trace = Json::array();
  for (const auto& step : p.trace) {
    trace.push_back(Json{{"expr", step.expr}, {"rule", step.rule}, {"agrees", step.agrees},
                         {"prediction", to_json(step.prediction)}});
  }
  Json j = to_json(p.top);
  j["agrees"] = p.all_agree();
  j["trace"] = std::move(trace);
  return j;
}

Json to_json(const MembershipReport& m) {
  Json j{{"expr", m.expr}, {"trivial", m.trivial}};
  j["delta"] = m.delta ? to_json(*m.delta) : Json(nullptr);
  j["condition_delta"] = m.trivial ? Json(nullptr) : to_json(m.condition);
  j["sign_condition"] = m.signs ? to_json(*m.signs) : Json(nullptr);
  j["ss"] = m.ss ? to_json(*m.ss) : Json(nullptr);
  if (m.prediction) j["prediction"] = to_json(*m.prediction);
  if (!m.prediction_note.empty()) j["prediction_note"] = m.prediction_note;
  j["pass"] = m.pass();
  return j;
}

Json to_json(const std::vector<DegreeRow>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) out.push_back(Json{{"n", r.n}, {"d_plus", frac(r.d_plus)}, {"lead_sign", r.lead_sign}});
  return out;
}

QuasiPoly quasi_from_json(const Json& j) {
  try {
    QuasiPoly qp;
    qp.period = j.at("period").get<int>();
    if (qp.period < 1) throw ValidationError("period must be >= 1");
    const Json& classes = j.at("classes");
    if (!classes.is_array() || static_cast<int>(classes.size()) != qp.period) {
      throw ValidationError("expected one class per residue");
    }
    qp.classes.resize(static_cast<std::size_t>(qp.period));
    for (const auto& c : classes) {
      const int r = c.at("residue").get<int>();
      if (r < 0 || r >= qp.period) throw ValidationError("residue out of range");
      qp.classes[static_cast<std::size_t>(r)] =
          QuasiClass{parse_fraction(c.at("a").get<std::string>()), parse_fraction(c.at("b").get<std::string>()),
                     parse_fraction(c.at("c").get<std::string>())};
    }
    qp.stabilization = j.at("stabilization").get<std::int64_t>();
    qp.n_max = j.at("n_max").get<std::int64_t>();
    return qp;
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed quasi-polynomial JSON: ") + e.what());
  }
}

}  // namespace graphknot
