#include <gtest/gtest.h>

#include "graphknot/errors.hpp"
#include "graphknot/json.hpp"
#include "support.hpp"

namespace graphknot {
namespace {

using testing::make_quasi;
using testing::R;

std::vector<std::string> keys(const Json& j) {
  std::vector<std::string> out;
  for (auto it = j.begin(); it != j.end(); ++it) out.push_back(it.key());
  return out;
}

TEST(Json, QuasiPolySchema) {
  QuasiPoly qp = make_quasi({{R(15, 4), R(0), R(-9, 2)}, {R(15, 4), R(0), R(-15, 4)}});
  qp.n_max = 16;
  const Json j = to_json(qp);
  EXPECT_EQ(keys(j), (std::vector<std::string>{"period", "classes", "stabilization", "n_max"}));
  EXPECT_EQ(j["classes"][0].dump(), R"({"residue":0,"a":"15/4","b":"0/1","c":"-9/2"})");
  EXPECT_EQ(j["classes"][1]["c"], "-15/4");
}

TEST(Json, IntegersKeepTheirDenominator) {
  EXPECT_EQ(to_json(make_quasi({{R(6), R(-5, 2), R(-7, 2)}}))["classes"][0]["a"], "6/1");
}

TEST(Json, PredictionSchema) {
  DeltaPrediction d;
  d.quasi = make_quasi({{R(13, 2), R(0), R(-13, 2)}});
  d.case_tag = SlopeCase::AboveSlope;
  d.c_sigma = {R(0), R(0)};
  d.valid_from = 1;
  const Json j = to_json(d);
  EXPECT_EQ(keys(j), (std::vector<std::string>{"period", "classes", "stabilization", "n_max", "case", "C_sigma",
                                               "valid_from"}));
  EXPECT_EQ(j["case"], "above");
  EXPECT_EQ(j["C_sigma"].dump(), R"({"even":"0/1","odd":"0/1"})");

  DeltaPrediction plain;
  plain.quasi = make_quasi({{R(3, 2), R(0), R(-3, 2)}});
  const Json p = to_json(plain);
  EXPECT_TRUE(p["case"].is_null());
  EXPECT_TRUE(p["valid_from"].is_null());
  EXPECT_TRUE(p["C_sigma"]["even"].is_null());
}

TEST(Json, SurfaceSchema) {
  SurfaceData s;
  s.slope = R(24);
  s.boundary_count = 2;
  s.euler = -10;
  s.provenance = {"annulus of T(3,2)"};
  const Json j = to_json(s);
  EXPECT_EQ(keys(j), (std::vector<std::string>{"slope", "boundary_count", "euler", "ratio", "provenance"}));
  EXPECT_EQ(j["ratio"], "-5/1");
}

TEST(Json, QuasiRoundTrip) {
  testing::Gen g(0x5eed0601);
  for (int iter = 0; iter < 100; ++iter) {
    std::vector<QuasiClass> classes;
    const int period = static_cast<int>(g.range(1, 5));
    for (int i = 0; i < period; ++i) classes.push_back({g.rational(50, 8), g.rational(50, 8), g.rational(50, 8)});
    QuasiPoly qp = make_quasi(classes, g.range(1, 9));
    qp.n_max = g.range(0, 40);
    const QuasiPoly back = quasi_from_json(Json::parse(to_json(qp).dump()));
    ASSERT_EQ(back.period, qp.period);
    ASSERT_EQ(back.classes, qp.classes);
    ASSERT_EQ(back.stabilization, qp.stabilization);
    ASSERT_EQ(back.n_max, qp.n_max);
  }
}

TEST(Json, MalformedQuasi) {
  EXPECT_THROW(quasi_from_json(Json::parse(R"({"period":2,"classes":[]})")), ValidationError);
  EXPECT_THROW(quasi_from_json(Json::parse(R"({"period":1})")), ValidationError);
  EXPECT_THROW(
      quasi_from_json(Json::parse(
          R"({"period":1,"classes":[{"residue":0,"a":"x","b":"0","c":"0"}],"stabilization":1,"n_max":0})")),
      ValidationError);
}

TEST(Json, DegreeRows) {
  const std::vector<DegreeRow> rows{{1, R(0), 1}, {2, R(9, 2), -1}};
  EXPECT_EQ(to_json(rows).dump(), R"([{"n":1,"d_plus":"0/1","lead_sign":1},{"n":2,"d_plus":"9/2","lead_sign":-1}])");
}

}  // namespace
}  // namespace graphknot
