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
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

namespace dfpil {

/// Additive-reciprocal m x m relation over alternatives; entry (i, j) is the
/// preference of A_i over A_j.
class PreferenceRelation {
public:
  PreferenceRelation() = default;

  explicit PreferenceRelation(std::size_t m)
      : m_(m), entries_(m * m, PeakIntervalTerm{0.5, 0.5, 1.0, false}) {}

  PreferenceRelation(std::size_t m, std::vector<PeakIntervalTerm> entries)
      : m_(m), entries_(std::move(entries)) {
    if (entries_.size() != m * m) {
      throw error(error_kind::shape, "preference relation needs " + std::to_string(m * m) +
                                         " entries");
    }
  }

  [[nodiscard]] std::size_t size() const { return m_; }
  [[nodiscard]] PeakIntervalTerm const &at(std::size_t i, std::size_t j) const {
    return entries_[i * m_ + j];
  }
  PeakIntervalTerm &at(std::size_t i, std::size_t j) { return entries_[i * m_ + j]; }

  /// Sets (i, j) and its mirror (j, i) so that reciprocity holds.
  void set_pair(std::size_t i, std::size_t j, PeakIntervalTerm const &term) {
    at(i, j) = term;
    at(j, i) = PeakIntervalTerm{1.0 - term.hi, 1.0 - term.lo, term.p, false};
  }

private:
  std::size_t m_{0};
  std::vector<PeakIntervalTerm> entries_;
};

enum class RelationRule { diagonal, bound_reciprocity, probability_reciprocity };

inline char const *to_string(RelationRule rule) {
  switch (rule) {
  case RelationRule::diagonal: return "diagonal entry must be the point s0(o0) with p = 1";
  case RelationRule::bound_reciprocity: return "lower(i,j) + upper(j,i) must equal s0(o0)";
  case RelationRule::probability_reciprocity: return "p(i,j) must equal p(j,i)";
  }
  return "";
}

struct RelationViolation {
  std::size_t i{0};
  std::size_t j{0};
  RelationRule rule{RelationRule::diagonal};
};

inline std::vector<RelationViolation> validate(PreferenceRelation const &r) {
  constexpr double tol = 1e-9;
  std::vector<RelationViolation> out;
  std::size_t const m = r.size();
  for (std::size_t i = 0; i < m; ++i) {
    auto const &d = r.at(i, i);
    if (std::abs(d.lo - 0.5) > tol || std::abs(d.hi - 0.5) > tol || std::abs(d.p - 1.0) > tol) {
      out.push_back({i, i, RelationRule::diagonal});
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      auto const &a = r.at(i, j);
      auto const &b = r.at(j, i);
      if (std::abs(a.lo + b.hi - 1.0) > tol || std::abs(a.hi + b.lo - 1.0) > tol) {
        out.push_back({i, j, RelationRule::bound_reciprocity});
      }
      if (std::abs(a.p - b.p) > tol) {
        out.push_back({i, j, RelationRule::probability_reciprocity});
      }
    }
  }
  return out;
}

/// Entrywise scores; E_ii = 0.5 and E_ij + E_ji = 1 on a valid relation.
inline Eigen::MatrixXd score_matrix(PreferenceRelation const &r) {
  auto const m = static_cast<Eigen::Index>(r.size());
  Eigen::MatrixXd e(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      e(i, j) = i == j ? 0.5 : score(r.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
    }
  }
  return e;
}

/// Root-mean-square difference of the certainty-weighted upper-triangle scores.
inline double distance(PreferenceRelation const &rp, PreferenceRelation const &rq) {
  if (rp.size() != rq.size()) {
    throw error(error_kind::shape, "relations compare " + std::to_string(rp.size()) + " vs " +
                                       std::to_string(rq.size()) + " alternatives");
  }
  std::size_t const m = rp.size();
  if (m < 2) {
    return 0.0;
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      double const d = score(rp.at(i, j)) * rp.at(i, j).p - score(rq.at(i, j)) * rq.at(i, j).p;
      acc += d * d;
    }
  }
  return std::sqrt(2.0 / static_cast<double>(m * (m - 1)) * acc);
}

namespace detail {

inline void check_relations(std::vector<PreferenceRelation> const &relations) {
  if (relations.size() < 2) {
    throw error(error_kind::config, "expert weighting needs at least two experts");
  }
  for (auto const &r : relations) {
    if (r.size() != relations.front().size()) {
      throw error(error_kind::shape, "experts disagree on the number of alternatives");
    }
  }
}

inline std::vector<double> uniform(std::size_t n) {
  return std::vector<double>(n, 1.0 / static_cast<double>(n));
}

inline std::vector<double> normalized(std::vector<double> v) {
  double const total = std::accumulate(v.begin(), v.end(), 0.0);
  for (auto &x : v) x /= total;
  return v;
}

} // namespace detail

/// Normalised column sums of a symmetric distance matrix.
inline std::vector<double> outer_weights_from_distances(Eigen::MatrixXd const &d,
                                                        Diagnostics *diag = nullptr) {
  if (d.rows() != d.cols() || d.rows() < 2) {
    throw error(error_kind::shape, "distance matrix must be square with at least two experts");
  }
  std::vector<double> column(static_cast<std::size_t>(d.cols()));
  for (Eigen::Index j = 0; j < d.cols(); ++j) column[static_cast<std::size_t>(j)] = d.col(j).sum();
  if (std::accumulate(column.begin(), column.end(), 0.0) == 0.0) {
    note(diag, "uniform_fallback", "outer_weights", "all pairwise distances are zero");
    return detail::uniform(column.size());
  }
  return detail::normalized(std::move(column));
}

/// Column sums of the pairwise distance matrix, normalised. Experts farther
/// from the rest of the group receive more weight, as the formula reads.
inline std::vector<double> outer_weights(std::vector<PreferenceRelation> const &relations,
                                         Diagnostics *diag = nullptr) {
  detail::check_relations(relations);
  auto const n = static_cast<Eigen::Index>(relations.size());
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = j + 1; k < n; ++k) {
      d(j, k) = d(k, j) = distance(relations[static_cast<std::size_t>(j)],
                                   relations[static_cast<std::size_t>(k)]);
    }
  }
  return outer_weights_from_distances(d, diag);
}

/// Indirect score of (i, j) through v: E_iv - E_jv + 0.5.
inline double indirect_score(Eigen::MatrixXd const &e, std::size_t i, std::size_t j, std::size_t v) {
  auto const m = static_cast<std::size_t>(e.rows());
  if (i >= m || j >= m || v >= m || !(i < j) || v == i || v == j) {
    throw error(error_kind::index, "indirect score needs i < j < m and a distinct v < m");
  }
  auto const at = [&e](std::size_t a, std::size_t b) {
    return e(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
  };
  return at(i, v) - at(j, v) + 0.5;
}

/// Sum over v and i < j (both != v) of |E_ij - E_ij^{-v}|. With paper_literal
/// the constant subtracted from the D-sum is m(m-1)/2 instead of the triple
/// count times 0.5; the two agree at m = 4.
inline double inner_deviation(PreferenceRelation const &r, bool paper_literal = false,
                              Diagnostics *diag = nullptr) {
  std::size_t const m = r.size();
  if (m < 3) {
    note(diag, "no_indirect_path", "inner_deviation",
         "fewer than three alternatives; deviation taken as 0");
    return 0.0;
  }
  auto const e = score_matrix(r);
  double total = 0.0;
  std::size_t triples = 0;
  for (std::size_t v = 0; v < m; ++v) {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        if (i == v || j == v) continue;
        double const direct = e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        total += std::abs(direct - indirect_score(e, i, j, v));
        ++triples;
      }
    }
  }
  if (paper_literal) {
    note(diag, "paper_literal", "inner_deviation",
         "subtracted m(m-1)*0.5 = " + std::to_string(0.5 * static_cast<double>(m * (m - 1))) +
             " instead of " + std::to_string(0.5 * static_cast<double>(triples)));
    total += 0.5 * static_cast<double>(triples) - 0.5 * static_cast<double>(m * (m - 1));
  }
  return total;
}

/// Entropy floor applied before inversion.
inline constexpr double entropy_floor = 1e-12;

/// Weights proportional to 1 / le(u_k), le = -(1/log2 m) p_k log2 p_k,
/// p_k = u_k / sum u. m is the number of alternatives.
inline std::vector<double> inner_weights(std::vector<double> const &deviations,
                                         std::size_t alternatives, Diagnostics *diag = nullptr) {
  std::size_t const n = deviations.size();
  if (n < 2) {
    throw error(error_kind::config, "expert weighting needs at least two experts");
  }
  if (alternatives < 2) {
    throw error(error_kind::config, "entropy normalisation needs at least two alternatives");
  }
  double total = 0.0;
  for (double u : deviations) {
    if (!(u >= 0.0) || !std::isfinite(u)) {
      throw error(error_kind::numerical, "inner deviation " + std::to_string(u) +
                                             " is negative or not finite");
    }
    total += u;
  }
  if (total == 0.0) {
    note(diag, "uniform_fallback", "inner_weights", "all inner deviations are zero");
    return detail::uniform(n);
  }
  double const norm = 1.0 / std::log2(static_cast<double>(alternatives));
  std::vector<double> inverse(n);
  for (std::size_t k = 0; k < n; ++k) {
    double const p = deviations[k] / total;
    double le = p > 0.0 ? -norm * p * std::log2(p) : 0.0;
    if (le < entropy_floor) {
      note(diag, "entropy_floor", "inner_weights", "expert " + std::to_string(k + 1));
      le = entropy_floor;
    }
    inverse[k] = 1.0 / le;
  }
  return detail::normalized(std::move(inverse));
}

inline std::vector<double> trust_weights(std::vector<double> const &psi) {
  double total = 0.0;
  for (double x : psi) {
    if (!(x >= 0.0 && x <= 1.0)) {
      throw error(error_kind::range, "trust degree " + std::to_string(x) + " outside [0, 1]");
    }
    total += x;
  }
  if (!(total > 0.0)) {
    throw error(error_kind::empty_evidence, "trust degrees sum to zero");
  }
  return detail::normalized(psi);
}

struct BlendCoefficients {
  double alpha{1.0 / 3.0};
  double beta{1.0 / 3.0};
  double gamma{1.0 / 3.0};

  void validate() const {
    for (double c : {alpha, beta, gamma}) {
      if (!(c >= 0.0 && c <= 1.0)) {
        throw error(error_kind::config, "blend coefficients must lie in [0, 1]");
      }
    }
    if (std::abs(alpha + beta + gamma - 1.0) > 1e-9) {
      throw error(error_kind::config, "blend coefficients must sum to 1");
    }
  }
};

/// alpha * outer + beta * inner + gamma * trust.
inline std::vector<double> blend_weights(std::vector<double> const &outer,
                                         std::vector<double> const &inner,
                                         std::vector<double> const &trust,
                                         BlendCoefficients const &blend) {
  blend.validate();
  if (outer.size() != inner.size() || outer.size() != trust.size()) {
    throw error(error_kind::shape, "weight vectors differ in length");
  }
  for (auto const *v : {&outer, &inner, &trust}) {
    // inputs may carry 4-decimal rounding
    if (std::abs(std::accumulate(v->begin(), v->end(), 0.0) - 1.0) > 1e-3) {
      throw error(error_kind::config, "blend input is not a probability vector");
    }
  }
  std::vector<double> out(outer.size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = blend.alpha * outer[k] + blend.beta * inner[k] + blend.gamma * trust[k];
  }
  return out;
}

struct ExpertWeightReport {
  std::vector<double> outer;
  std::vector<double> inner;
  std::vector<double> trust;
  std::vector<double> blended;
  BlendCoefficients blend;
  std::vector<double> deviations; // u_k per expert
};

/// Outer, inner and trust weights blended into one expert weight vector.
inline ExpertWeightReport expert_weights(std::vector<PreferenceRelation> const &relations,
                                         std::vector<double> const &psi,
                                         BlendCoefficients const &blend, bool paper_literal = false,
                                         Diagnostics *diag = nullptr) {
  if (psi.size() != relations.size()) {
    throw error(error_kind::shape, "one trust degree per expert is required");
  }
  ExpertWeightReport out;
  out.blend = blend;
  out.trust = trust_weights(psi);
  if (relations.size() == 1) {
    out.outer = out.inner = out.blended = {1.0};
    out.deviations = {inner_deviation(relations.front(), paper_literal, diag)};
    return out;
  }
  out.outer = outer_weights(relations, diag);
  for (auto const &r : relations) {
    out.deviations.push_back(inner_deviation(r, paper_literal, diag));
  }
  out.inner = inner_weights(out.deviations, relations.front().size(), diag);
  out.blended = blend_weights(out.outer, out.inner, out.trust, blend);
  return out;
}

/// Model-1 design: per expert k and pair i < j a residual
/// (1/2)(w_i - w_j) - (E_ij - 0.5) weighted by omega_k p_ij.
inline SimplexWLSProblem priority_problem(std::vector<PreferenceRelation> const &relations,
                                          std::vector<double> const &weights) {
  if (relations.empty() || weights.size() != relations.size()) {
    throw error(error_kind::shape, "one expert weight per relation is required");
  }
  std::size_t const m = relations.front().size();
  SimplexWLSProblem problem{m, {}, Positivity::strict};
  for (std::size_t k = 0; k < relations.size(); ++k) {
    if (relations[k].size() != m) {
      throw error(error_kind::shape, "experts disagree on the number of alternatives");
    }
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        auto const &entry = relations[k].at(i, j);
        WlsTerm term{std::vector<double>(m, 0.0), score(entry) - 0.5, weights[k] * entry.p};
        term.row[i] = 0.5;
        term.row[j] = -0.5;
        problem.terms.push_back(std::move(term));
      }
    }
  }
  return problem;
}

/// Collective priority vector on the open simplex.
inline SimplexSolution collective_priorities(std::vector<PreferenceRelation> const &relations,
                                             std::vector<double> const &weights,
                                             Diagnostics *diag = nullptr) {
  auto solution = solve(priority_problem(relations, weights));
  if (solution.status == SolveStatus::degenerate) {
    note(diag, "degenerate", "collective_priorities",
         "comparison graph does not pin the optimum; minimum-norm point returned");
  }
  return solution;
}

} // namespace dfpil
