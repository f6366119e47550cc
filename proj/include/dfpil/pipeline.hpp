//------------------------------------------------------------------------------
//
//   Copyright 2026 The dfpil Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------
#pragma once

#include "diagnostics.hpp"
#include "error.hpp"
#include "markov.hpp"
#include "prefs.hpp"
#include "scenario.hpp"
#include "solver.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace dfpil {

/// How far run_pipeline goes: markov = steps 1-2, weights adds expert
/// weights, priorities adds Model 1, aggregate adds U, all adds the ranking.
enum class Stage { markov, weights, priorities, aggregate, all };

inline char const *to_string(Stage stage) {
  switch (stage) {
  case Stage::markov: return "markov";
  case Stage::weights: return "weights";
  case Stage::priorities: return "priorities";
  case Stage::aggregate: return "aggregate";
  case Stage::all: return "all";
  }
  return "";
}

struct PipelineOptions {
  Stage stage{Stage::all};
  std::optional<WeightScheme> scheme; // overrides the scenario's choice
  bool paper_literal{false};
};

struct DecisionReport {
  Stage stage{Stage::all};
  std::optional<TransitionMatrix> transition;
  std::optional<PeriodWeights> period_weights;
  /// Per attribute; empty when weights were not computed for it.
  std::vector<std::optional<ExpertWeightReport>> expert_weights;
  std::vector<std::optional<std::vector<double>>> priorities;
  std::optional<std::vector<double>> comparable;
  std::optional<std::vector<std::size_t>> ranking;
  Diagnostics diagnostics;
};

/// U_x = sum_t sum_q omega_q^t w_q^x.
inline std::vector<double> aggregate(PeriodWeights const &omega,
                                     std::vector<std::vector<double>> const &priorities) {
  if (static_cast<std::size_t>(omega.cols()) != priorities.size() || priorities.empty()) {
    throw error(error_kind::shape, "period weights cover " + std::to_string(omega.cols()) +
                                       " attributes but " + std::to_string(priorities.size()) +
                                       " priority vectors were given");
  }
  std::size_t const m = priorities.front().size();
  std::vector<double> u(m, 0.0);
  for (std::size_t q = 0; q < priorities.size(); ++q) {
    if (priorities[q].size() != m) {
      throw error(error_kind::shape, "priority vectors differ in length");
    }
    double const attribute_mass = omega.col(static_cast<Eigen::Index>(q)).sum();
    for (std::size_t x = 0; x < m; ++x) u[x] += attribute_mass * priorities[q][x];
  }
  return u;
}

/// Descending order of U; exact ties keep ascending index order and are noted.
inline std::vector<std::size_t> rank(std::vector<double> const &u, Diagnostics *diag = nullptr) {
  for (double v : u) {
    if (!std::isfinite(v)) throw error(error_kind::numerical, "comparable value is not finite");
  }
  std::vector<std::size_t> order(u.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&u](auto a, auto b) { return u[a] > u[b]; });
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i + 1;
    while (j < order.size() && u[order[j]] == u[order[i]]) ++j;
    if (j - i > 1) {
      std::string members;
      for (std::size_t k = i; k < j; ++k) {
        members += (k > i ? ", " : "") + std::string("A") + std::to_string(order[k] + 1);
      }
      note(diag, "tie", "rank", members + " tied; index order kept");
    }
    i = j;
  }
  return order;
}

namespace detail {

template <typename Fn>
auto tagged(int step, Fn &&fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (error const &e) {
    throw error(e.kind(), "step " + std::to_string(step) + ": " + e.what(), e.details());
  }
}

inline std::string attribute_where(Scenario const &sc, std::size_t q) {
  return "attribute " + sc.attributes[q];
}

} // namespace detail

inline DecisionReport run_pipeline(Scenario const &sc, PipelineOptions const &options = {}) {
  DecisionReport report;
  report.stage = options.stage;
  report.diagnostics = sc.load_notes;
  auto *diag = &report.diagnostics;
  bool const literal = options.paper_literal || sc.paper_literal;
  WeightScheme const scheme = options.scheme.value_or(sc.markov.scheme);
  std::size_t const attributes = sc.attributes.size();

  // Step 1: transition matrix
  report.transition = detail::tagged(1, [&] {
    if (sc.overrides.transition_matrix) {
      note(diag, "override", "step 1", "transition matrix taken from scenario");
      return *sc.overrides.transition_matrix;
    }
    return estimate_transition(sc.markov.assessments, diag);
  });

  // Step 2: period weights
  report.period_weights = detail::tagged(2, [&]() -> PeriodWeights {
    if (sc.overrides.period_weights) {
      note(diag, "override", "step 2", "period weights taken from scenario");
      return *sc.overrides.period_weights;
    }
    if (scheme == WeightScheme::reshape) {
      return period_weights_reshaped(*report.transition, sc.markov.periods,
                                     sc.markov.initial_iterations, sc.markov.origin,
                                     sc.markov.updates);
    }
    return period_weights(*report.transition, sc.markov.periods, sc.markov.initial_iterations,
                          sc.markov.origin);
  });
  if (options.stage == Stage::markov) return report;

  // Step 3: expert weights and collective priorities per attribute
  report.expert_weights.assign(attributes, std::nullopt);
  report.priorities.assign(attributes, std::nullopt);
  if (literal) {
    note(diag, "paper_literal", "step 3", "printed inner-deviation constant in use");
  }
  detail::tagged(3, [&] {
    for (std::size_t q = 0; q < attributes; ++q) {
      auto const where = detail::attribute_where(sc, q);
      auto const &relations = sc.preferences[q];
      if (auto it = sc.overrides.expert_weight_vectors.find(q);
          it != sc.overrides.expert_weight_vectors.end()) {
        note(diag, "override", where, "expert weights taken from scenario");
        ExpertWeightReport ew;
        ew.blended = it->second;
        ew.blend = sc.blend;
        report.expert_weights[q] = ew;
      } else if (!relations.empty()) {
        report.expert_weights[q] = expert_weights(relations, sc.trust(), sc.blend, literal, diag);
      } else {
        note(diag, "skipped", where, "no preference relations; expert weights not computed");
      }
    }
    return 0;
  });
  if (options.stage == Stage::weights) return report;

  detail::tagged(3, [&] {
    for (std::size_t q = 0; q < attributes; ++q) {
      auto const where = detail::attribute_where(sc, q);
      if (auto it = sc.overrides.priority_vectors.find(q); it != sc.overrides.priority_vectors.end()) {
        note(diag, "override", where, "priority vector taken from scenario");
        report.priorities[q] = it->second;
        continue;
      }
      report.priorities[q] =
          collective_priorities(sc.preferences[q], report.expert_weights[q]->blended, diag).vector;
    }
    return 0;
  });
  if (options.stage == Stage::priorities) return report;

  // Step 4: aggregation
  report.comparable = detail::tagged(4, [&] {
    std::vector<std::vector<double>> w;
    for (auto const &p : report.priorities) w.push_back(*p);
    return aggregate(*report.period_weights, w);
  });
  if (options.stage == Stage::aggregate) return report;

  // Step 5: ranking
  report.ranking = detail::tagged(5, [&] { return rank(*report.comparable, diag); });
  return report;
}

/// Model 1 run on peak scores and on a PLTS reduction of the same evidence.
struct PltsComparison {
  std::vector<double> dfpilts;
  std::vector<double> plts;
  double dfpilts_min_gap{0.0};
  double plts_min_gap{0.0};
  double dfpilts_range{0.0};
  double plts_range{0.0};
};

namespace detail {

inline double min_gap(std::vector<double> const &w) {
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < w.size(); ++a) {
    for (std::size_t b = a + 1; b < w.size(); ++b) gap = std::min(gap, std::abs(w[a] - w[b]));
  }
  return w.size() < 2 ? 0.0 : gap;
}

inline double spread(std::vector<double> const &w) {
  auto const [lo, hi] = std::minmax_element(w.begin(), w.end());
  return *hi - *lo;
}

} // namespace detail

/// PLTS reduction of a peak term: the midpoint carries probability p and the
/// unassigned mass 1 - p sits on s0<o0>, so its PLTS score is p mid + (1 - p) / 2.
inline PeakIntervalTerm plts_reduction(PeakIntervalTerm const &term) {
  double const value = term.p * score(term) + (1.0 - term.p) * 0.5;
  return PeakIntervalTerm{value, value, term.p, false};
}

inline PltsComparison compare_with_plts(Scenario const &sc, std::size_t attribute,
                                        bool paper_literal = false, Diagnostics *diag = nullptr) {
  if (attribute >= sc.attributes.size()) {
    throw error(error_kind::index, "attribute index out of range");
  }
  auto const &relations = sc.preferences[attribute];
  if (relations.empty()) {
    throw error(error_kind::config, "attribute " + sc.attributes[attribute] +
                                        " has no preference relations");
  }
  std::vector<double> weights;
  if (auto it = sc.overrides.expert_weight_vectors.find(attribute);
      it != sc.overrides.expert_weight_vectors.end()) {
    weights = it->second;
  } else {
    weights = expert_weights(relations, sc.trust(), sc.blend, paper_literal || sc.paper_literal, diag)
                  .blended;
  }

  std::vector<PreferenceRelation> reduced;
  for (auto const &r : relations) {
    PreferenceRelation out(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
      for (std::size_t j = 0; j < r.size(); ++j) out.at(i, j) = plts_reduction(r.at(i, j));
    }
    reduced.push_back(std::move(out));
  }

  PltsComparison out;
  out.dfpilts = collective_priorities(relations, weights, diag).vector;
  out.plts = collective_priorities(reduced, weights, diag).vector;
  out.dfpilts_min_gap = detail::min_gap(out.dfpilts);
  out.plts_min_gap = detail::min_gap(out.plts);
  out.dfpilts_range = detail::spread(out.dfpilts);
  out.plts_range = detail::spread(out.plts);
  return out;
}

} // namespace dfpil
