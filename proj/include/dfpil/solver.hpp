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

#include "error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

namespace dfpil {

/// Lower bound standing in for strict positivity.
inline constexpr double strict_floor = 1e-9;

enum class Positivity { strict, nonnegative };

struct WlsTerm {
  std::vector<double> row; // coefficients over the unknowns
  double target{0.0};
  double weight{1.0};
};

/// min sum_t weight_t (row_t . x - target_t)^2  s.t.  sum x = 1, x >= floor.
struct SimplexWLSProblem {
  std::size_t dimension{0};
  std::vector<WlsTerm> terms;
  Positivity positivity{Positivity::strict};

  [[nodiscard]] double floor() const {
    return positivity == Positivity::strict ? strict_floor : 0.0;
  }

  void validate() const {
    if (dimension == 0) {
      throw error(error_kind::shape, "simplex problem has no unknowns");
    }
    if (static_cast<double>(dimension) * floor() >= 1.0) {
      throw error(error_kind::config, "positivity floor leaves no feasible point");
    }
    bool any_positive = false;
    for (auto const &term : terms) {
      if (term.row.size() != dimension) {
        throw error(error_kind::shape, "design row has " + std::to_string(term.row.size()) +
                                           " coefficients, expected " +
                                           std::to_string(dimension));
      }
      for (double a : term.row) {
        if (!std::isfinite(a)) {
          throw error(error_kind::numerical, "design row is not finite");
        }
      }
      if (!std::isfinite(term.target) || !(term.weight >= 0.0) || !std::isfinite(term.weight)) {
        throw error(error_kind::numerical, "term target/weight invalid");
      }
      any_positive = any_positive || term.weight > 0.0;
    }
    if (!any_positive) {
      throw error(error_kind::config, "simplex problem needs a term with positive weight");
    }
  }

  /// Weighted residual sum at x.
  [[nodiscard]] double objective(std::vector<double> const &x) const {
    double total = 0.0;
    for (auto const &term : terms) {
      double r = -term.target;
      for (std::size_t i = 0; i < dimension; ++i) r += term.row[i] * x[i];
      total += term.weight * r * r;
    }
    return total;
  }
};

enum class SolveStatus { optimal, degenerate };

struct SimplexSolution {
  std::vector<double> vector;
  double objective{0.0};
  std::vector<std::size_t> active_bounds;
  SolveStatus status{SolveStatus::optimal};
};

namespace detail {

struct Quadratic {
  Eigen::MatrixXd hessian; // Q, objective is x'Qx - 2c'x + const
  Eigen::VectorXd linear;  // c
};

inline Quadratic assemble(SimplexWLSProblem const &problem) {
  auto const m = static_cast<Eigen::Index>(problem.dimension);
  Quadratic q{Eigen::MatrixXd::Zero(m, m), Eigen::VectorXd::Zero(m)};
  for (auto const &term : problem.terms) {
    Eigen::Map<Eigen::VectorXd const> a(term.row.data(), m);
    q.hessian.noalias() += term.weight * a * a.transpose();
    q.linear.noalias() += term.weight * term.target * a;
  }
  return q;
}

struct SubproblemResult {
  Eigen::VectorXd x;
  bool rank_deficient{false};
};

// Minimises over the free coordinates with the bound set pinned at the floor.
// The free block is written as centroid + N z with N an orthonormal basis of
// the sum-zero subspace; the minimum-norm z gives the minimum-norm x.
inline SubproblemResult solve_free(Quadratic const &q, std::vector<bool> const &bound,
                                   double floor) {
  auto const m = q.hessian.rows();
  std::vector<Eigen::Index> free;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (!bound[static_cast<std::size_t>(i)]) free.push_back(i);
  }
  auto const r = static_cast<Eigen::Index>(free.size());
  Eigen::VectorXd x = Eigen::VectorXd::Constant(m, floor);
  double const mass = 1.0 - floor * static_cast<double>(m - r);
  for (auto i : free) x(i) = mass / static_cast<double>(r);
  if (r == 1) {
    return {x, false};
  }

  Eigen::HouseholderQR<Eigen::MatrixXd> qr(Eigen::MatrixXd::Ones(r, 1));
  Eigen::MatrixXd const full = qr.householderQ() * Eigen::MatrixXd::Identity(r, r);
  Eigen::MatrixXd const n = full.rightCols(r - 1);

  Eigen::MatrixXd qff(r, r);
  Eigen::VectorXd rhs(r);
  for (Eigen::Index a = 0; a < r; ++a) {
    for (Eigen::Index b = 0; b < r; ++b) qff(a, b) = q.hessian(free[a], free[b]);
    // gradient of the free block at x (halved): Q x - c
    rhs(a) = q.hessian.row(free[a]).dot(x) - q.linear(free[a]);
  }
  Eigen::MatrixXd const h = n.transpose() * qff * n;
  Eigen::VectorXd const g = n.transpose() * rhs;
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(h);
  cod.setThreshold(1e-12);
  Eigen::VectorXd const z = cod.solve(-g);
  Eigen::VectorXd const step = n * z;
  for (Eigen::Index a = 0; a < r; ++a) x(free[a]) += step(a);
  return {x, cod.rank() < r - 1};
}

} // namespace detail

/// Projected-gradient stationarity residual at x: zero at a KKT point.
inline double stationarity_residual(SimplexWLSProblem const &problem, std::vector<double> const &x) {
  auto const q = detail::assemble(problem);
  auto const m = static_cast<Eigen::Index>(problem.dimension);
  Eigen::Map<Eigen::VectorXd const> xv(x.data(), m);
  Eigen::VectorXd const grad = 2.0 * (q.hessian * xv - q.linear);
  double const floor = problem.floor();
  double const tol = 1e-12;
  double nu = 0.0;
  int nfree = 0;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (x[static_cast<std::size_t>(i)] > floor + tol) {
      nu += grad(i);
      ++nfree;
    }
  }
  nu = nfree > 0 ? nu / nfree : grad.minCoeff();
  double residual = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    double const reduced = grad(i) - nu;
    residual = std::max(residual, x[static_cast<std::size_t>(i)] > floor + tol
                                      ? std::abs(reduced)
                                      : std::max(0.0, -reduced));
  }
  return residual;
}

/// Primal active-set solve of the simplex-constrained weighted least squares.
inline SimplexSolution solve(SimplexWLSProblem const &problem) {
  problem.validate();
  auto const q = detail::assemble(problem);
  auto const m = static_cast<Eigen::Index>(problem.dimension);
  double const floor = problem.floor();

  Eigen::VectorXd x = Eigen::VectorXd::Constant(m, 1.0 / static_cast<double>(m));
  std::vector<bool> bound(static_cast<std::size_t>(m), false);
  bool rank_deficient = false;
  double const grad_scale = 1.0 + q.hessian.cwiseAbs().maxCoeff() + q.linear.cwiseAbs().maxCoeff();

  int const max_iter = 50 + 10 * static_cast<int>(m);
  bool converged = false;
  for (int iter = 0; iter < max_iter; ++iter) {
    auto const sub = detail::solve_free(q, bound, floor);
    Eigen::VectorXd const step = sub.x - x;

    double alpha = 1.0;
    Eigen::Index blocking = -1;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (bound[static_cast<std::size_t>(i)] || step(i) >= 0.0) continue;
      double const limit = (floor - x(i)) / step(i);
      if (limit < alpha) {
        alpha = limit;
        blocking = i;
      }
    }
    if (blocking >= 0) {
      x += std::max(alpha, 0.0) * step;
      x(blocking) = floor;
      bound[static_cast<std::size_t>(blocking)] = true;
      continue;
    }

    x = sub.x;
    rank_deficient = sub.rank_deficient;
    Eigen::VectorXd const grad = 2.0 * (q.hessian * x - q.linear);
    double nu = 0.0;
    int nfree = 0;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (!bound[static_cast<std::size_t>(i)]) {
        nu += grad(i);
        ++nfree;
      }
    }
    nu /= nfree;
    Eigen::Index release = -1;
    double worst = -1e-12 * grad_scale;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (bound[static_cast<std::size_t>(i)] && grad(i) - nu < worst) {
        worst = grad(i) - nu;
        release = i;
      }
    }
    if (release < 0) {
      converged = true;
      break;
    }
    bound[static_cast<std::size_t>(release)] = false;
  }
  if (!converged) {
    throw error(error_kind::numerical, "active-set solve did not converge");
  }

  SimplexSolution out;
  out.vector.assign(x.data(), x.data() + m);
  for (Eigen::Index i = 0; i < m; ++i) {
    if (bound[static_cast<std::size_t>(i)]) out.active_bounds.push_back(static_cast<std::size_t>(i));
  }
  out.objective = problem.objective(out.vector);
  out.status = rank_deficient ? SolveStatus::degenerate : SolveStatus::optimal;
  return out;
}

} // namespace dfpil
