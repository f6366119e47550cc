#include "support.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

namespace dfpil {
namespace {

using testing::data_path;
using testing::printed_transition;
using testing::scenario_path;

std::string slurp(std::string const &path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t count_kind(Diagnostics const &d, std::string const &kind) {
  return static_cast<std::size_t>(
      std::count_if(d.begin(), d.end(), [&](auto const &x) { return x.kind == kind; }));
}

TEST(LoadScenario, BundledCase) {
  auto const sc = load_scenario(scenario_path("financial_crisis.json"));
  EXPECT_EQ(sc.attributes.size(), 4u);
  EXPECT_EQ(sc.alternatives.size(), 4u);
  EXPECT_EQ(sc.experts.size(), 4u);
  EXPECT_EQ(sc.markov.periods, 3);
  EXPECT_EQ(sc.markov.origin, 0u);
  EXPECT_EQ(sc.attributes[0], "IRR");
  for (auto const &attr : sc.preferences) {
    ASSERT_EQ(attr.size(), 4u);
    for (auto const &r : attr) EXPECT_TRUE(validate(r).empty());
  }
}

TEST(LoadScenario, ReciprocityViolationIsLocated) {
  try {
    load_scenario(data_path("validation.json"));
    FAIL() << "no error";
  } catch (error const &e) {
    EXPECT_EQ(e.kind(), error_kind::validation);
    ASSERT_EQ(e.details().size(), 1u);
    EXPECT_NE(e.details()[0].find("preferences.C1[0](1,2)"), std::string::npos) << e.details()[0];
  }
}

TEST(LoadScenario, ReportsEveryViolation) {
  try {
    load_scenario(data_path("many_violations.json"));
    FAIL() << "no error";
  } catch (error const &e) {
    EXPECT_EQ(e.kind(), error_kind::validation);
    EXPECT_EQ(e.details().size(), 3u);
  }
}

TEST(LoadScenario, ParseErrors) {
  EXPECT_KIND(load_scenario(data_path("empty.json")), parse);
  try {
    load_scenario(data_path("parse.json"));
    FAIL() << "no error";
  } catch (error const &e) {
    EXPECT_EQ(e.kind(), error_kind::parse);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
  EXPECT_KIND(load_scenario(data_path("does_not_exist.json")), parse);
  EXPECT_KIND(parse_scenario("[1, 2]"), validation);
  EXPECT_KIND(parse_scenario(R"({"format": 2})"), validation);
}

TEST(LoadScenario, LiteralAndArrayTermsAgree) {
  auto text = slurp(scenario_path("uniform.json"));
  auto const a = parse_scenario(text);
  for (std::size_t pos; (pos = text.find("\"s0(o0)\"")) != std::string::npos;) {
    text.replace(pos, 8, "[0, 0]");
  }
  auto const b = parse_scenario(text);
  EXPECT_EQ(a.preferences[1][1].at(0, 2).lo, b.preferences[1][1].at(0, 2).lo);
}

TEST(LoadScenario, PrintedOverridesCarryLoadNotes) {
  auto const sc = load_scenario(scenario_path("financial_crisis_paper_stages.json"));
  ASSERT_TRUE(sc.overrides.transition_matrix);
  EXPECT_NEAR(sc.overrides.transition_matrix->values().row(0).sum(), 1.0, 1e-12);
  EXPECT_EQ(count_kind(sc.load_notes, "renormalized_row"), 1u);
  EXPECT_GE(count_kind(sc.load_notes, "loose_sum"), 1u); // printed third period sums to 0.9
  ASSERT_TRUE(sc.overrides.period_weights);
  EXPECT_DOUBLE_EQ((*sc.overrides.period_weights)(2, 3), 0.3768);
}

TEST(RunPipeline, PrintedStagesReproduceRanking) {
  auto const sc = load_scenario(scenario_path("financial_crisis_paper_stages.json"));
  auto const r = run_pipeline(sc);
  std::vector<double> const expected{0.8279, 0.6743, 0.6993, 0.6981};
  ASSERT_TRUE(r.comparable);
  for (std::size_t x = 0; x < 4; ++x) EXPECT_NEAR((*r.comparable)[x], expected[x], 5e-4);
  EXPECT_EQ(*r.ranking, (std::vector<std::size_t>{0, 2, 3, 1}));
}

TEST(RunPipeline, UniformScenario) {
  auto const r = run_pipeline(load_scenario(scenario_path("uniform.json")));
  ASSERT_TRUE(r.comparable);
  for (double u : *r.comparable) EXPECT_NEAR(u, (*r.comparable)[0], 1e-12);
  EXPECT_NEAR(std::accumulate(r.comparable->begin(), r.comparable->end(), 0.0), 2.0, 1e-9);
  EXPECT_EQ(*r.ranking, (std::vector<std::size_t>{0, 1, 2}));
}

TEST(RunPipeline, TransitionOverrideOnlyDrivesPowerScheme) {
  auto sc = load_scenario(scenario_path("financial_crisis.json"));
  sc.overrides.transition_matrix = TransitionMatrix::renormalized(printed_transition(), 1e-3);
  auto const r = run_pipeline(sc, {Stage::markov, WeightScheme::power, false});
  std::vector<std::vector<double>> const expected{{0.2104, 0.4854, 0.2969, 0.0072},
                                                  {0.0480, 0.3171, 0.2311, 0.4038},
                                                  {0.2140, 0.1637, 0.1455, 0.4768}};
  for (int t = 0; t < 3; ++t)
    for (int q = 0; q < 4; ++q) EXPECT_NEAR((*r.period_weights)(t, q), expected[t][q], 5e-4);
  EXPECT_FALSE(r.comparable);
  EXPECT_TRUE(r.expert_weights.empty());
}

TEST(RunPipeline, OverridingWithOwnOutputChangesNothing) {
  auto sc = load_scenario(scenario_path("financial_crisis.json"));
  auto const base = run_pipeline(sc);

  auto with_m = sc;
  with_m.overrides.transition_matrix = *base.transition;
  auto const a = run_pipeline(with_m);
  EXPECT_TRUE(*a.period_weights == *base.period_weights);
  EXPECT_EQ(*a.comparable, *base.comparable);

  auto with_w = sc;
  with_w.overrides.period_weights = *base.period_weights;
  for (std::size_t q = 0; q < sc.attributes.size(); ++q) {
    with_w.overrides.expert_weight_vectors[q] = base.expert_weights[q]->blended;
  }
  auto const b = run_pipeline(with_w);
  EXPECT_EQ(*b.comparable, *base.comparable);

  auto with_p = sc;
  for (std::size_t q = 0; q < sc.attributes.size(); ++q) {
    with_p.overrides.priority_vectors[q] = *base.priorities[q];
  }
  auto const c = run_pipeline(with_p);
  EXPECT_EQ(*c.comparable, *base.comparable);
  EXPECT_EQ(*c.ranking, *base.ranking);
}

TEST(RunPipeline, ByteStableJson) {
  auto const sc = load_scenario(scenario_path("financial_crisis.json"));
  auto const a = report_json(sc, run_pipeline(sc)).dump(2);
  auto const b = report_json(load_scenario(scenario_path("financial_crisis.json")),
                             run_pipeline(load_scenario(scenario_path("financial_crisis.json"))))
                     .dump(2);
  EXPECT_EQ(a, b);
}

TEST(RunPipeline, StepTaggedErrors) {
  auto const sc = load_scenario(data_path("numerical.json"));
  try {
    run_pipeline(sc);
    FAIL() << "no error";
  } catch (error const &e) {
    EXPECT_EQ(e.kind(), error_kind::numerical);
    EXPECT_EQ(std::string(e.what()).rfind("step 1:", 0), 0u) << e.what();
  }
}

TEST(RunPipeline, PaperLiteralIsRecordedOnce) {
  auto const sc = load_scenario(scenario_path("financial_crisis.json"));
  auto const r = run_pipeline(sc, {Stage::weights, std::nullopt, true});
  // One note for the switch plus one per inner_deviation call (16 relations).
  EXPECT_EQ(count_kind(r.diagnostics, "paper_literal"), 1u + 16u);
  EXPECT_FALSE(r.priorities[0]);
}

TEST(Aggregate, Examples) {
  PeriodWeights one(1, 1);
  one << 1.0;
  EXPECT_EQ(aggregate(one, {{0.2, 0.5, 0.3}}), (std::vector<double>{0.2, 0.5, 0.3}));

  PeriodWeights omega(2, 2);
  omega << 0.3, 0.7, 0.6, 0.4;
  std::vector<std::vector<double>> const w{{0.1, 0.9}, {0.5, 0.5}};
  auto const u = aggregate(omega, w);
  PeriodWeights twice(4, 2);
  twice << omega, omega;
  auto const u2 = aggregate(twice, w);
  for (std::size_t x = 0; x < 2; ++x) EXPECT_NEAR(u2[x], 2.0 * u[x], 1e-15);
  EXPECT_NEAR(u[0] + u[1], 2.0, 1e-15);
  // Hand value: (0.3 + 0.6) * 0.1 + (0.7 + 0.4) * 0.5.
  EXPECT_NEAR(u[0], 0.64, 1e-15);

  EXPECT_KIND(aggregate(omega, {{0.5, 0.5}}), shape);
  EXPECT_KIND(aggregate(omega, {{0.5, 0.5}, {1.0}}), shape);
}

TEST(Rank, Examples) {
  EXPECT_EQ(rank({0.8279, 0.6743, 0.6993, 0.6981}), (std::vector<std::size_t>{0, 2, 3, 1}));

  Diagnostics diag;
  EXPECT_EQ(rank({0.4, 0.4, 0.4}, &diag), (std::vector<std::size_t>{0, 1, 2}));
  ASSERT_EQ(diag.size(), 1u);
  EXPECT_EQ(diag[0].kind, "tie");

  // Swapping two inputs moves their labels with their values.
  EXPECT_EQ(rank({0.6743, 0.8279, 0.6993, 0.6981}), (std::vector<std::size_t>{1, 2, 3, 0}));
  EXPECT_KIND(rank({0.1, std::nan("")}), numerical);
}

TEST(ComparePlts, PointEvidenceCoincides) {
  auto const sc = load_scenario(scenario_path("financial_crisis.json"));
  // ALR relations are certain points, so both reductions see the same scores.
  auto const c = compare_with_plts(sc, 1);
  ASSERT_EQ(c.dfpilts.size(), c.plts.size());
  for (std::size_t i = 0; i < c.plts.size(); ++i) EXPECT_NEAR(c.dfpilts[i], c.plts[i], 1e-12);
}

TEST(ComparePlts, IntervalEvidenceSeparatesAlternativesMore) {
  auto const sc = load_scenario(scenario_path("financial_crisis.json"));
  auto const c = compare_with_plts(sc, 0);
  EXPECT_GT(c.dfpilts_min_gap, c.plts_min_gap);
  EXPECT_GT(c.dfpilts_range, c.plts_range);
  EXPECT_KIND(compare_with_plts(sc, 9), index);
}

TEST(Report, TextAndJsonShapes) {
  auto const sc = load_scenario(scenario_path("financial_crisis_paper_stages.json"));
  auto const r = run_pipeline(sc);
  auto const j = report_json(sc, r);
  EXPECT_EQ(j["ranking"].get<std::vector<std::string>>(),
            (std::vector<std::string>{"A1", "A3", "A4", "A2"}));
  EXPECT_EQ(j["format"], 1);
  auto const text = report_text(sc, r);
  EXPECT_NE(text.find("Ranking: A1 > A3 > A4 > A2"), std::string::npos);
  EXPECT_NE(text.find("A1: 0.8279"), std::string::npos);
}

} // namespace
} // namespace dfpil
