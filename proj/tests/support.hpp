// Shared fixtures for the unit tests.
#pragma once

#include <dfpil.hpp>

#include <gtest/gtest.h>

#include <random>
#include <string>
#include <vector>

namespace dfpil::testing {

/// Runs fn and reports whether it threw a dfpil::error of the given kind.
template <typename Fn>
::testing::AssertionResult throws_kind(Fn &&fn, error_kind kind) {
  try {
    fn();
  } catch (error const &e) {
    if (e.kind() == kind) return ::testing::AssertionSuccess() << e.what();
    return ::testing::AssertionFailure() << "threw " << to_string(e.kind()) << ": " << e.what();
  }
  return ::testing::AssertionFailure() << "did not throw";
}

#define EXPECT_KIND(stmt, kind) \
  EXPECT_TRUE(::dfpil::testing::throws_kind([&] { (void)(stmt); }, ::dfpil::error_kind::kind))

inline LinguisticScale const paper_scale{4, 4, {}, {}};

inline std::string scenario_path(std::string const &name) {
  return std::string(DFPIL_SCENARIO_DIR) + "/" + name;
}

inline std::string data_path(std::string const &name) {
  return std::string(DFPIL_TEST_DATA_DIR) + "/" + name;
}

inline PeakIntervalTerm unit_point(double g, double p = 1.0) {
  return PeakIntervalTerm::from_unit_interval(g, g, p);
}

/// Relation with point entries E_ij = scale * (w_i - w_j) + 0.5.
inline PreferenceRelation consistent_relation(std::vector<double> const &w, double scale) {
  PreferenceRelation r(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = i + 1; j < w.size(); ++j) {
      r.set_pair(i, j, unit_point(scale * (w[i] - w[j]) + 0.5));
    }
  }
  return r;
}

/// Random probability vector with every component at least `low`.
inline std::vector<double> random_simplex(std::mt19937_64 &rng, std::size_t m, double low) {
  std::exponential_distribution<double> draw(1.0);
  std::vector<double> w(m);
  double total = 0.0;
  for (auto &x : w) total += (x = draw(rng));
  for (auto &x : w) x = low + (1.0 - low * static_cast<double>(m)) * x / total;
  return w;
}

/// The transition matrix printed in the worked example (first row sums to 0.9999).
inline Eigen::MatrixXd printed_transition() {
  Eigen::MatrixXd m(4, 4);
  m << 0.2104, 0.4854, 0.2969, 0.0072,
       0.0, 0.4429, 0.0, 0.5571,
       0.0, 0.0, 0.5679, 0.4321,
       0.5050, 0.0, 0.0, 0.4950;
  return m;
}

} // namespace dfpil::testing
