#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "graphknot/cjones.hpp"
#include "graphknot/degree_fit.hpp"
#include "graphknot/errors.hpp"
#include "support.hpp"

namespace graphknot {
namespace {

using testing::R;

LaurentPoly P(std::string_view text) { return parse_laurent(text); }
KnotExpr K(std::string_view text) { return parse_knot(text); }

// Values below were produced by tests/oracles/jones_oracle.py (sympy).
TEST(ColoredJones, OracleTorusValues) {
  EXPECT_EQ(jones_torus(3, 2, 2), P("-q^(18/4) + q^(10/4) + q^(6/4) + q^(2/4)"));
  EXPECT_EQ(jones_torus(3, 2, 3),
            P("q^(48/4) - q^(40/4) - q^(36/4) - q^(32/4) + q^(20/4) + q^(16/4) + q^(12/4) + q^(8/4) + q^(4/4)"));
  EXPECT_EQ(jones_torus(5, 3, 2), P("-q^(42/4) - q^(38/4) + q^(26/4) + q^(22/4) + q^(18/4) + q^(14/4)"));
  EXPECT_EQ(jones_torus(5, 2, 3),
            P("q^(80/4) - q^(64/4) - q^(60/4) - q^(56/4) + q^(28/4) + q^(24/4) + q^(20/4) + q^(16/4) + q^(12/4)"));
  EXPECT_EQ(normalized_torus(3, 2, 1), P("-q^(16/4) + q^(12/4) + q^(4/4)"));
}

TEST(ColoredJones, OracleSumValue) {
  const LaurentPoly s = jones(K("S(T(3,2), T(3,2))"), 2);
  EXPECT_EQ(s, P("q^(34/4) - q^(30/4) - q^(26/4) - q^(22/4) + 2*q^(14/4) + q^(10/4) + q^(6/4)"));
  EXPECT_EQ(degree_data(s).d_plus, R(17, 2));
}

TEST(ColoredJones, OracleDegreeSequences) {
  auto seq = [](std::string_view text) {
    std::vector<std::string> out;
    for (const auto& d : dplus_sequence(K(text), 8, nullptr)) out.push_back(to_fraction_string(d));
    return out;
  };
  using V = std::vector<std::string>;
  EXPECT_EQ(seq("T(3,2)"), (V{"0/1", "9/2", "12/1", "45/2", "36/1", "105/2", "72/1", "189/2"}));
  EXPECT_EQ(seq("T(5,3)"), (V{"0/1", "21/2", "30/1", "111/2", "90/1", "261/2", "180/1", "471/2"}));
  EXPECT_EQ(seq("T(5,2)"), (V{"0/1", "15/2", "20/1", "75/2", "60/1", "175/2", "120/1", "315/2"}));
  EXPECT_EQ(seq("C(23,4; T(3,2))"),
            (V{"0/1", "141/2", "189/1", "711/2", "570/1", "1665/2", "1143/1", "3003/2"}));
}

TEST(ColoredJones, OracleNestedCable) {
  JonesCache cache;
  const KnotExpr k = K("C(191,2; C(23,4; T(3,2)))");
  std::vector<std::string> got;
  for (const auto& d : dplus_sequence(k, 8, &cache)) got.push_back(to_fraction_string(d));
  EXPECT_EQ(got, (std::vector<std::string>{"0/1", "573/2", "764/1", "2865/2", "2292/1", "6681/2", "4587/1",
                                           "12047/2"}));
}

TEST(ColoredJones, NestedCableSignProfile) {
  // The leading sign of even colors flips once the maximising k in the
  // cabling sum moves to k >= 0; parity-constancy fails at (2, 8).
  JonesCache cache;
  const SignProfile s = sign_profile(K("C(191,2; C(23,4; T(3,2)))"), 10, &cache);
  EXPECT_EQ(s.signs, (std::vector<int>{1, -1, 1, -1, 1, -1, 1, 1, 1, 1}));
  ASSERT_TRUE(s.fails_at.has_value());
  EXPECT_EQ(*s.fails_at, (std::pair<std::int64_t, std::int64_t>{2, 8}));
}

TEST(ColoredJones, UnknotIsQuantumInteger) {
  EXPECT_EQ(jones_unknot(1), LaurentPoly::constant(1));
  EXPECT_EQ(jones_unknot(2), P("q^(2/4) + q^(-2/4)"));
  EXPECT_EQ(jones_unknot(3), P("q^(4/4) + q^(0/4) + q^(-4/4)"));
  EXPECT_EQ(jones(K("U"), 5), jones_unknot(5));
}

TEST(ColoredJones, CableOfUnknotIsTorus) {
  const std::pair<std::int64_t, std::int64_t> pairs[] = {{3, 2}, {5, 2}, {5, 3}, {7, 3}, {-3, 2}};
  for (const auto& [a, b] : pairs) {
    const KnotExpr c = KnotExpr::cable(a, b, KnotExpr::unknot());
    for (std::int64_t n = 1; n <= 6; ++n) {
      ASSERT_EQ(jones(c, n), jones_torus(a, b, n)) << a << "," << b << " n=" << n;
    }
  }
}

TEST(ColoredJones, MirrorRelation) {
  for (std::int64_t n = 1; n <= 6; ++n) {
    EXPECT_EQ(jones_torus(-5, 3, n), mirror(jones_torus(5, 3, n)));
    EXPECT_EQ(jones(K("C(-7,2; T(-3,2))"), n), mirror(jones(K("C(7,2; T(3,2))"), n)));
  }
}

TEST(ColoredJones, SumWithUnknotIsIdentity) {
  for (std::int64_t n = 1; n <= 6; ++n) {
    EXPECT_EQ(jones(K("S(T(5,3), U)"), n), jones_torus(5, 3, n));
    EXPECT_EQ(jones(K("S(U, C(5,2; T(3,2)))"), n), jones(K("C(5,2; T(3,2))"), n));
  }
}

TEST(ColoredJonesProperty, EvaluationAtOneIsColor) {
  testing::Gen g(0x5eed0201);
  for (int iter = 0; iter < 25; ++iter) {
    const KnotExpr k = g.knot(2);
    for (std::int64_t n = 1; n <= 4; ++n) {
      const LaurentPoly j = jones(k, n, nullptr, 4096);
      ASSERT_EQ(eval_at_one(j), n) << format(k) << " n=" << n;
      if (n == 1) ASSERT_EQ(j, LaurentPoly::constant(1)) << format(k);
    }
  }
}

TEST(ColoredJonesProperty, SumIsSymmetric) {
  testing::Gen g(0x5eed0202);
  for (int iter = 0; iter < 20; ++iter) {
    const KnotExpr a = g.knot(1);
    const KnotExpr b = g.knot(1);
    const std::int64_t n = g.range(1, 4);
    ASSERT_EQ(jones(KnotExpr::sum(a, b), n, nullptr, 4096), jones(KnotExpr::sum(b, a), n, nullptr, 4096));
  }
}

TEST(JonesCache, TransparentToResults) {
  JonesCache cache;
  const KnotExpr k = K("S(C(7,2; T(3,2)), C(5,3; T(3,2)))");
  for (std::int64_t n = 1; n <= 5; ++n) EXPECT_EQ(jones(k, n, &cache), jones(k, n));
  EXPECT_GT(cache.size(), 0u);
  for (std::int64_t n = 1; n <= 5; ++n) EXPECT_EQ(jones(k, n, &cache), jones(k, n));
}

TEST(JonesCache, ConcurrentTableMatchesSerial) {
  const KnotExpr k = K("C(13,2; C(5,2; T(3,2)))");
  JonesCache shared;
  const auto parallel = degree_table(k, 10, &shared, SamplingOptions{kDefaultColorCeiling, 4});
  const auto serial = degree_table(k, 10, nullptr, SamplingOptions{kDefaultColorCeiling, 1});
  ASSERT_EQ(parallel.size(), serial.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    EXPECT_EQ(parallel[i].n, serial[i].n);
    EXPECT_EQ(parallel[i].d_plus, serial[i].d_plus);
    EXPECT_EQ(parallel[i].lead_sign, serial[i].lead_sign);
  }
}

TEST(JonesCache, SaveAndLoad) {
  const auto path = std::filesystem::temp_directory_path() / "graphknot_cache_test.txt";
  JonesCache cache;
  const KnotExpr k = K("C(7,2; T(3,2))");
  for (std::int64_t n = 1; n <= 4; ++n) jones(k, n, &cache);
  cache.save(path);

  JonesCache loaded;
  ASSERT_TRUE(loaded.load(path));
  EXPECT_EQ(loaded.size(), cache.size());
  EXPECT_EQ(loaded.lookup("C(7,2; T(3,2))", 3), jones(k, 3));

  {
    std::ofstream out(path, std::ios::trunc);
    out << "graphknot-jones-cache 999\n";
  }
  JonesCache stale;
  EXPECT_FALSE(stale.load(path));
  EXPECT_EQ(stale.size(), 0u);
  std::filesystem::remove(path);
  EXPECT_FALSE(stale.load(path));
}

TEST(ColoredJones, ColorCeiling) {
  EXPECT_THROW(jones(K("C(7,2; T(3,2))"), 10, nullptr, 16), ColorCeilingExceeded);
  EXPECT_NO_THROW(jones(K("C(7,2; T(3,2))"), 10, nullptr, 19));
}

TEST(ColoredJones, LeadingSignOfTorusKnots) {
  for (std::int64_t n = 1; n <= 8; ++n) {
    const int expected = n % 2 == 1 ? 1 : -1;
    EXPECT_EQ(eps(K("T(3,2)"), n), expected);
    EXPECT_EQ(eps(K("T(7,4)"), n), expected);
    EXPECT_EQ(eps(K("T(-5,3)"), n), 1);
  }
}

}  // namespace
}  // namespace graphknot
