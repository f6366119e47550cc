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
#include "solver.hpp"
#include "terms.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace dfpil {

/// One expert's q x q transition assessment; row i is the source state.
class LinguisticMarkovAssessment {
public:
  LinguisticMarkovAssessment() = default;

  LinguisticMarkovAssessment(std::size_t q, std::vector<PeakIntervalTerm> entries)
      : q_(q), entries_(std::move(entries)) {
    if (entries_.size() != q * q) {
      throw error(error_kind::shape, "Markov assessment needs " + std::to_string(q * q) +
                                         " entries");
    }
  }

  [[nodiscard]] std::size_t size() const { return q_; }
  [[nodiscard]] PeakIntervalTerm const &at(std::size_t i, std::size_t j) const {
    return entries_[i * q_ + j];
  }

private:
  std::size_t q_{0};
  std::vector<PeakIntervalTerm> entries_;
};

/// Row-stochastic matrix.
class TransitionMatrix {
public:
  static constexpr double tolerance = 1e-9;

  TransitionMatrix() = default;

  explicit TransitionMatrix(Eigen::MatrixXd values) : values_(std::move(values)) {
    auto const problems = check(values_);
    if (!problems.empty()) {
      throw error(error_kind::validation, "matrix is not row-stochastic", problems);
    }
  }

  /// Accepts rows whose sums are within `slack` of 1 and rescales them,
  /// recording each rescaled row.
  static TransitionMatrix renormalized(Eigen::MatrixXd values, double slack,
                                       Diagnostics *diag = nullptr) {
    if (values.rows() != values.cols()) {
      throw error(error_kind::shape, "transition matrix must be square");
    }
    for (Eigen::Index i = 0; i < values.rows(); ++i) {
      double const sum = values.row(i).sum();
      if (std::abs(sum - 1.0) > tolerance && std::abs(sum - 1.0) <= slack && sum > 0.0) {
        values.row(i) /= sum;
        note(diag, "renormalized_row", "transition_matrix",
             "row " + std::to_string(i + 1) + " summed to " + std::to_string(sum));
      }
    }
    return TransitionMatrix(std::move(values));
  }

  static std::vector<std::string> check(Eigen::MatrixXd const &values) {
    std::vector<std::string> problems;
    if (values.rows() != values.cols() || values.rows() == 0) {
      problems.emplace_back("transition matrix must be square and nonempty");
      return problems;
    }
    for (Eigen::Index i = 0; i < values.rows(); ++i) {
      for (Eigen::Index j = 0; j < values.cols(); ++j) {
        if (!(values(i, j) >= 0.0) || !std::isfinite(values(i, j))) {
          problems.push_back("entry (" + std::to_string(i + 1) + ", " + std::to_string(j + 1) +
                             ") is negative or not finite");
        }
      }
      if (std::abs(values.row(i).sum() - 1.0) > tolerance) {
        problems.push_back("row " + std::to_string(i + 1) + " sums to " +
                           std::to_string(values.row(i).sum()));
      }
    }
    return problems;
  }

  [[nodiscard]] Eigen::MatrixXd const &values() const { return values_; }
  [[nodiscard]] std::size_t size() const { return static_cast<std::size_t>(values_.rows()); }

private:
  Eigen::MatrixXd values_;
};

/// Rows are periods, columns attributes.
using PeriodWeights = Eigen::MatrixXd;

namespace detail {

inline bool is_floor_point(PeakIntervalTerm const &term) {
  return term.lo == 0.0 && term.hi == 0.0 && term.p == 1.0;
}

} // namespace detail

/// Row-wise least squares of the crisp matrix against the experts' scores,
/// weighted by certainty. Entries that every expert rates as the floor point
/// with p = 1 are fixed at exactly 0.
inline TransitionMatrix estimate_transition(std::vector<LinguisticMarkovAssessment> const &assessments,
                                            Diagnostics *diag = nullptr) {
  if (assessments.empty()) {
    throw error(error_kind::config, "at least one Markov assessment is required");
  }
  std::size_t const q = assessments.front().size();
  for (auto const &a : assessments) {
    if (a.size() != q) {
      throw error(error_kind::shape, "Markov assessments disagree on the number of attributes");
    }
  }
  Eigen::MatrixXd values = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(q),
                                                 static_cast<Eigen::Index>(q));
  for (std::size_t i = 0; i < q; ++i) {
    std::vector<std::size_t> free;
    for (std::size_t j = 0; j < q; ++j) {
      bool pinned = true;
      for (auto const &a : assessments) pinned = pinned && detail::is_floor_point(a.at(i, j));
      if (!pinned) free.push_back(j);
    }
    if (free.empty()) {
      throw error(error_kind::numerical, "row " + std::to_string(i + 1) +
                                             " has no admissible transition");
    }
    SimplexWLSProblem problem{free.size(), {}, Positivity::strict};
    for (std::size_t f = 0; f < free.size(); ++f) {
      for (auto const &a : assessments) {
        auto const &entry = a.at(i, free[f]);
        WlsTerm term{std::vector<double>(free.size(), 0.0), score(entry), entry.p};
        term.row[f] = 1.0;
        problem.terms.push_back(std::move(term));
      }
    }
    bool any_weight = false;
    for (auto const &t : problem.terms) any_weight = any_weight || t.weight > 0.0;
    std::vector<double> row;
    if (!any_weight) {
      // no certainty anywhere in the row: every feasible point is optimal
      note(diag, "degenerate", "estimate_transition",
           "row " + std::to_string(i + 1) + " carries zero certainty; uniform row used");
      row.assign(free.size(), 1.0 / static_cast<double>(free.size()));
    } else {
      auto const solution = solve(problem);
      if (solution.status == SolveStatus::degenerate) {
        note(diag, "degenerate", "estimate_transition",
             "row " + std::to_string(i + 1) + " optimum is not unique");
      }
      row = solution.vector;
    }
    for (std::size_t f = 0; f < free.size(); ++f) {
      values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(free[f])) = row[f];
    }
  }
  return TransitionMatrix(std::move(values));
}

namespace detail {

inline void check_periods(TransitionMatrix const &m, int periods, int initial_iterations,
                          std::size_t origin) {
  if (periods < 1) throw error(error_kind::config, "at least one period is required");
  if (initial_iterations < 1) throw error(error_kind::config, "initial iterations must be >= 1");
  if (origin >= m.size()) throw error(error_kind::index, "origin attribute out of range");
}

inline Eigen::RowVectorXd propagate(Eigen::RowVectorXd v, Eigen::MatrixXd const &m, int steps) {
  for (int s = 0; s < steps; ++s) v = v * m;
  return v;
}

} // namespace detail

/// omega^t = e_origin M^(Z + t - 1), t = 1..T.
inline PeriodWeights period_weights(TransitionMatrix const &m, int periods, int initial_iterations,
                                    std::size_t origin) {
  detail::check_periods(m, periods, initial_iterations, origin);
  auto const q = static_cast<Eigen::Index>(m.size());
  PeriodWeights out(periods, q);
  Eigen::RowVectorXd v = Eigen::RowVectorXd::Zero(q);
  v(static_cast<Eigen::Index>(origin)) = 1.0;
  v = detail::propagate(v, m.values(), initial_iterations);
  for (int t = 0; t < periods; ++t) {
    out.row(t) = v;
    v = v * m.values();
  }
  return out;
}

/// Variant that restarts each period from a reshaped start vector: the origin
/// attribute gets updates[t], the remaining mass follows the previous period's
/// shares of the other attributes (uniform when those are all zero), and
/// Z + t - 1 steps are applied.
inline PeriodWeights period_weights_reshaped(TransitionMatrix const &m, int periods,
                                             int initial_iterations, std::size_t origin,
                                             std::vector<double> const &updates) {
  detail::check_periods(m, periods, initial_iterations, origin);
  if (updates.size() != static_cast<std::size_t>(periods)) {
    throw error(error_kind::shape, "one origin update per period is required");
  }
  auto const q = static_cast<Eigen::Index>(m.size());
  auto const o = static_cast<Eigen::Index>(origin);
  PeriodWeights out(periods, q);
  Eigen::RowVectorXd previous = Eigen::RowVectorXd::Zero(q);
  previous(o) = 1.0;
  for (int t = 0; t < periods; ++t) {
    double const u = updates[static_cast<std::size_t>(t)];
    if (!(u >= 0.0 && u <= 1.0)) {
      throw error(error_kind::range, "origin update " + std::to_string(u) + " outside [0, 1]");
    }
    Eigen::RowVectorXd start = previous;
    start(o) = 0.0;
    double const others = start.sum();
    if (q > 1) {
      if (others > 0.0) {
        start *= (1.0 - u) / others;
      } else {
        start.setConstant((1.0 - u) / static_cast<double>(q - 1));
      }
    }
    start(o) = q > 1 ? u : 1.0;
    out.row(t) = detail::propagate(start, m.values(), initial_iterations + t);
    previous = out.row(t);
  }
  return out;
}

namespace detail {

inline std::string dot_escape(std::string const &text) {
  std::string out;
  for (char c : text) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

} // namespace detail

/// Graphviz digraph with one edge per nonzero transition, row-major.
inline std::string export_dot(TransitionMatrix const &m, std::vector<std::string> const &labels) {
  if (labels.size() != m.size()) {
    throw error(error_kind::shape, "expected " + std::to_string(m.size()) + " labels, got " +
                                       std::to_string(labels.size()));
  }
  std::string out = "digraph markov {\n  rankdir=LR;\n";
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out += "  n" + std::to_string(i) + " [label=\"" + detail::dot_escape(labels[i]) + "\"];\n";
  }
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      double const p = m.values()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      if (p == 0.0) continue;
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.4f", p);
      out += "  n" + std::to_string(i) + " -> n" + std::to_string(j) + " [label=\"" + buf +
             "\"];\n";
    }
  }
  out += "}\n";
  return out;
}

} // namespace dfpil
