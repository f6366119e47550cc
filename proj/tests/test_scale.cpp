#include "support.hpp"

#include <cmath>
#include <random>

namespace dfpil {
namespace {

using testing::paper_scale;

// Independent evaluation of the forward transform.
double unit_reference(int tau, int zeta, double t, double k) {
  return (k + (tau + t) * zeta) / (2.0 * zeta * tau);
}

TEST(ToUnit, WorkedValues) {
  EXPECT_DOUBLE_EQ(to_unit(paper_scale, {0, 0}), 0.5);
  EXPECT_DOUBLE_EQ(to_unit(paper_scale, {-4, 0}), 0.0);
  EXPECT_DOUBLE_EQ(to_unit(paper_scale, {2, 2}), 0.8125);
  EXPECT_DOUBLE_EQ(to_unit(paper_scale, {4, 0}), 1.0);
}

TEST(ToUnit, RangeErrorNamesCoordinate) {
  try {
    to_unit(paper_scale, {5, 0});
    FAIL() << "no error";
  } catch (error const &e) {
    EXPECT_EQ(e.kind(), error_kind::range);
    EXPECT_NE(std::string(e.what()).find("t="), std::string::npos);
  }
  try {
    to_unit(paper_scale, {0, -4.5});
    FAIL() << "no error";
  } catch (error const &e) {
    EXPECT_EQ(e.kind(), error_kind::range);
    EXPECT_NE(std::string(e.what()).find("k="), std::string::npos);
  }
  EXPECT_KIND(to_unit(paper_scale, {std::nan(""), 0}), range);
}

TEST(FromUnit, WorkedValues) {
  EXPECT_EQ(from_unit(paper_scale, 0.5), (TermCoord{0, 0}));
  EXPECT_EQ(from_unit(paper_scale, 1.0), (TermCoord{4, 0}));
  EXPECT_EQ(from_unit(paper_scale, 0.8125), (TermCoord{2, 2}));
  EXPECT_EQ(from_unit(paper_scale, 0.0), (TermCoord{-4, 0}));
  EXPECT_KIND(from_unit(paper_scale, 1.0001), range);
  EXPECT_KIND(from_unit(paper_scale, -0.1), range);
}

TEST(FromUnit, CanonicalBranchKeepsKInRange) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> g(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    auto const c = from_unit(paper_scale, g(rng));
    EXPECT_GE(c.k, 0.0);
    EXPECT_LT(c.k, 4.0);
    EXPECT_EQ(c.t, std::floor(c.t));
  }
}

TEST(ScaleProperties, RoundTrip) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> g(0.0, 1.0);
  std::uniform_int_distribution<int> dim(1, 9);
  for (int i = 0; i < 5000; ++i) {
    LinguisticScale const s{dim(rng), dim(rng), {}, {}};
    double const gamma = g(rng);
    EXPECT_NEAR(to_unit(s, from_unit(s, gamma)), gamma, 1e-12);
  }
}

TEST(ScaleProperties, MatchesReferenceFormula) {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> dim(1, 9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    int const tau = dim(rng), zeta = dim(rng);
    LinguisticScale const s{tau, zeta, {}, {}};
    double const t = u(rng) * tau, k = u(rng) * zeta;
    double const expected = unit_reference(tau, zeta, t, k);
    if (expected < 0.0 || expected > 1.0) continue;
    EXPECT_NEAR(to_unit(s, {t, k}), expected, 1e-15);
  }
}

TEST(ScaleProperties, Monotone) {
  for (int t = -4; t < 4; ++t) {
    EXPECT_LT(to_unit(paper_scale, {double(t), 0}), to_unit(paper_scale, {double(t + 1), 0}));
  }
  for (int k = -4; k < 4; ++k) {
    EXPECT_LT(to_unit(paper_scale, {1, double(k)}), to_unit(paper_scale, {1, double(k + 1)}));
  }
}

TEST(ScaleProperties, CenterAndReciprocalPair) {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> dim(1, 12);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    LinguisticScale const s{dim(rng), dim(rng), {}, {}};
    EXPECT_DOUBLE_EQ(to_unit(s, {0, 0}), 0.5);
    // Interior t keeps both (t, k) and (-t, -k) in range.
    double const t = u(rng) * (s.tau - 1), k = u(rng) * s.zeta;
    EXPECT_NEAR(to_unit(s, {t, k}) + to_unit(s, {-t, -k}), 1.0, 1e-15);
  }
}

TEST(TermAdd, Examples) {
  EXPECT_EQ(term_add(paper_scale, {2, 1}, {-2, -1}), (TermCoord{0, 0}));
  EXPECT_EQ(term_add(paper_scale, {1, 2}, {1, 1}), (TermCoord{2, 3}));
  EXPECT_KIND(term_add(paper_scale, {4, 0}, {1, 0}), overflow);
  EXPECT_KIND(term_add(paper_scale, {0, 3}, {0, 2}), overflow);
}

TEST(TermScale, LiteralRule) {
  EXPECT_EQ(term_scale(1.0, {3, 2}), (TermCoord{3, 2}));
  EXPECT_EQ(term_scale(0.5, {2, 0}), (TermCoord{1, 0}));
  EXPECT_EQ(term_scale(0.0, {3, 2}), (TermCoord{0, 2}));
  EXPECT_KIND(term_scale(1.5, {1, 0}), range);
}

TEST(TermScale, DiffersFromUnitSpaceScaling) {
  // Half of s2(o2): the literal rule gives s1(o2) = 0.6875, unit scaling 0.40625.
  TermCoord const a{2, 2};
  EXPECT_DOUBLE_EQ(to_unit(paper_scale, term_scale(0.5, a)), 0.6875);
  EXPECT_DOUBLE_EQ(to_unit(paper_scale, unit_scale(paper_scale, 0.5, a)), 0.40625);
}

TEST(TermLiteral, ParseAndFormat) {
  EXPECT_EQ(parse_term("s-2(o1)"), (TermCoord{-2, 1}));
  EXPECT_EQ(parse_term("s0(o0)"), (TermCoord{0, 0}));
  EXPECT_EQ(parse_term("s+1.5(o-0.25)"), (TermCoord{1.5, -0.25}));
  EXPECT_EQ(format_term({-2, 1}), "s-2(o1)");
  EXPECT_EQ(format_term({-0.0, 0}), "s0(o0)");
  EXPECT_EQ(format_term({2.5, -0.25}), "s2.5(o-0.25)");
  for (auto bad : {"", "s", "s1", "s1(o)", "t1(o1)", "s1(o1", "s1(o1))", "s 1(o1)", "sx(o1)"}) {
    EXPECT_FALSE(parse_term(bad).has_value()) << bad;
  }
}

TEST(TermLiteral, FormatParseRoundTrip) {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  for (int i = 0; i < 500; ++i) {
    TermCoord const c{u(rng), u(rng)};
    EXPECT_EQ(parse_term(format_term(c)), c);
  }
}

TEST(LinguisticScale, Validate) {
  EXPECT_NO_THROW(paper_scale.validate());
  EXPECT_KIND((LinguisticScale{0, 4, {}, {}}.validate()), config);
  EXPECT_KIND((LinguisticScale{1, 1, {"a", "b"}, {}}.validate()), config);
  EXPECT_NO_THROW((LinguisticScale{1, 1, {"low", "mid", "high"}, {"-", "", "+"}}.validate()));
}

} // namespace
} // namespace dfpil
