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

// Exhaustive grid search over the simplex, used to check solve() in tests.

#include "error.hpp"
#include "solver.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace dfpil {

/// Best grid point of {x : x_i = n_i * step, sum n_i = 1/step}. Its objective
/// upper-bounds the true optimum. Limited to m <= 4 and step >= 1e-3.
inline SimplexSolution brute_force_oracle(SimplexWLSProblem const &problem, double step) {
  problem.validate();
  std::size_t const m = problem.dimension;
  if (m > 4) {
    throw error(error_kind::oracle_scope, "grid oracle handles at most 4 unknowns");
  }
  if (!(step >= 1e-3 && step <= 1.0)) {
    throw error(error_kind::oracle_scope, "grid step must lie in [1e-3, 1]");
  }
  auto const cells = static_cast<long>(std::lround(1.0 / step));
  double const h = 1.0 / static_cast<double>(cells);

  // Objective expanded as x'Qx - 2c'x + k so each grid line is a 1-D quadratic.
  std::vector<std::vector<double>> qm(m, std::vector<double>(m, 0.0));
  std::vector<double> c(m, 0.0);
  double k = 0.0;
  for (auto const &term : problem.terms) {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) qm[i][j] += term.weight * term.row[i] * term.row[j];
      c[i] += term.weight * term.target * term.row[i];
    }
    k += term.weight * term.target * term.target;
  }
  auto value = [&](std::vector<double> const &x) {
    double v = k;
    for (std::size_t i = 0; i < m; ++i) {
      v -= 2.0 * c[i] * x[i];
      for (std::size_t j = 0; j < m; ++j) v += x[i] * qm[i][j] * x[j];
    }
    return v;
  };

  std::vector<double> best_x(m, 0.0);
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> x(m, 0.0);

  if (m == 1) {
    best_x[0] = 1.0;
  } else {
    // outer coordinates 0..m-3 enumerated; coordinate m-2 swept along a line
    // where coordinate m-1 takes the remainder
    std::size_t const a = m - 2;
    std::size_t const b = m - 1;
    auto sweep = [&](long remaining) {
      x[a] = 0.0;
      x[b] = static_cast<double>(remaining) * h;
      double const f0 = value(x);
      // direction h (e_a - e_b)
      double d1 = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        double g = -c[i];
        for (std::size_t j = 0; j < m; ++j) g += qm[i][j] * x[j];
        d1 += 2.0 * g * ((i == a) - (i == b)) * h;
      }
      double const d2 = (qm[a][a] - 2.0 * qm[a][b] + qm[b][b]) * h * h;
      auto visit = [&](long s) {
        double const ds = static_cast<double>(s);
        double const f = f0 + ds * (d1 + ds * d2);
        if (f < best) {
          best = f;
          best_x = x;
          best_x[a] = ds * h;
          best_x[b] = static_cast<double>(remaining - s) * h;
        }
      };
      // f(s) is convex along the line (Q is PSD), so the best grid point is an
      // endpoint or a neighbour of the continuous vertex.
      visit(0);
      visit(remaining);
      if (d2 > 0.0) {
        double const vertex = -d1 / (2.0 * d2);
        if (vertex > 0.0 && vertex < static_cast<double>(remaining)) {
          auto const s = static_cast<long>(std::floor(vertex));
          visit(s);
          if (s + 1 <= remaining) visit(s + 1);
        }
      }
    };
    if (m == 2) {
      sweep(cells);
    } else if (m == 3) {
      for (long i = 0; i <= cells; ++i) {
        x[0] = static_cast<double>(i) * h;
        sweep(cells - i);
      }
    } else {
      for (long i = 0; i <= cells; ++i) {
        x[0] = static_cast<double>(i) * h;
        for (long j = 0; j <= cells - i; ++j) {
          x[1] = static_cast<double>(j) * h;
          sweep(cells - i - j);
        }
      }
    }
  }

  SimplexSolution out;
  out.vector = best_x;
  out.objective = problem.objective(best_x);
  for (std::size_t i = 0; i < m; ++i) {
    if (best_x[i] <= problem.floor()) out.active_bounds.push_back(i);
  }
  return out;
}

} // namespace dfpil
