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

#include "pipeline.hpp"
#include "scenario.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <string>
#include <vector>

namespace dfpil {

namespace detail {

inline nlohmann::ordered_json matrix_json(Eigen::MatrixXd const &m) {
  auto out = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    auto row = nlohmann::ordered_json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    out.push_back(row);
  }
  return out;
}

inline std::string fixed4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

inline std::string vector_text(std::vector<double> const &v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + fixed4(v[i]);
  return out + ")";
}

} // namespace detail

/// Machine-readable report; key order is fixed so output is byte-stable.
inline nlohmann::ordered_json report_json(Scenario const &sc, DecisionReport const &report) {
  using oj = nlohmann::ordered_json;
  oj out;
  out["format"] = 1;
  out["stage"] = to_string(report.stage);
  out["attributes"] = sc.attributes;
  out["alternatives"] = sc.alternatives;
  if (report.transition) out["transition_matrix"] = detail::matrix_json(report.transition->values());
  if (report.period_weights) out["period_weights"] = detail::matrix_json(*report.period_weights);
  if (!report.expert_weights.empty()) {
    oj weights = oj::object();
    for (std::size_t q = 0; q < report.expert_weights.size(); ++q) {
      auto const &ew = report.expert_weights[q];
      if (!ew) continue;
      oj entry;
      if (!ew->outer.empty()) entry["outer"] = ew->outer;
      if (!ew->inner.empty()) entry["inner"] = ew->inner;
      if (!ew->trust.empty()) entry["trust"] = ew->trust;
      if (!ew->deviations.empty()) entry["inner_deviation"] = ew->deviations;
      entry["blended"] = ew->blended;
      entry["blend"] = {{"alpha", ew->blend.alpha}, {"beta", ew->blend.beta}, {"gamma", ew->blend.gamma}};
      weights[sc.attributes[q]] = entry;
    }
    out["expert_weights"] = weights;
  }
  if (!report.priorities.empty() && report.priorities.front()) {
    oj pri = oj::object();
    for (std::size_t q = 0; q < report.priorities.size(); ++q) {
      if (report.priorities[q]) pri[sc.attributes[q]] = *report.priorities[q];
    }
    out["priority_vectors"] = pri;
  }
  if (report.comparable) {
    oj u = oj::object();
    for (std::size_t x = 0; x < report.comparable->size(); ++x) {
      u[sc.alternatives[x]] = (*report.comparable)[x];
    }
    out["comparable_values"] = u;
  }
  if (report.ranking) {
    oj r = oj::array();
    for (auto x : *report.ranking) r.push_back(sc.alternatives[x]);
    out["ranking"] = r;
  }
  oj diags = oj::array();
  for (auto const &d : report.diagnostics) {
    diags.push_back({{"kind", d.kind}, {"where", d.where}, {"detail", d.detail}});
  }
  out["diagnostics"] = diags;
  return out;
}

inline std::string report_text(Scenario const &sc, DecisionReport const &report) {
  std::string out;
  if (report.transition) {
    out += "Transition matrix\n";
    auto const &m = report.transition->values();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      out += "  " + sc.attributes[static_cast<std::size_t>(i)] + ":";
      for (Eigen::Index j = 0; j < m.cols(); ++j) out += " " + detail::fixed4(m(i, j));
      out += "\n";
    }
  }
  if (report.period_weights) {
    out += "Period weights\n";
    auto const &w = *report.period_weights;
    for (Eigen::Index t = 0; t < w.rows(); ++t) {
      std::vector<double> row;
      for (Eigen::Index q = 0; q < w.cols(); ++q) row.push_back(w(t, q));
      out += "  period " + std::to_string(t + 1) + ": " + detail::vector_text(row) + "\n";
    }
  }
  for (std::size_t q = 0; q < report.expert_weights.size(); ++q) {
    auto const &ew = report.expert_weights[q];
    if (!ew) continue;
    out += "Expert weights [" + sc.attributes[q] + "]\n";
    if (!ew->outer.empty()) out += "  outer:   " + detail::vector_text(ew->outer) + "\n";
    if (!ew->inner.empty()) out += "  inner:   " + detail::vector_text(ew->inner) + "\n";
    if (!ew->trust.empty()) out += "  trust:   " + detail::vector_text(ew->trust) + "\n";
    out += "  blended: " + detail::vector_text(ew->blended) + "\n";
  }
  for (std::size_t q = 0; q < report.priorities.size(); ++q) {
    if (!report.priorities[q]) continue;
    out += "Priorities [" + sc.attributes[q] + "]: " + detail::vector_text(*report.priorities[q]) + "\n";
  }
  if (report.comparable) {
    out += "Comparable values\n";
    for (std::size_t x = 0; x < report.comparable->size(); ++x) {
      out += "  " + sc.alternatives[x] + ": " + detail::fixed4((*report.comparable)[x]) + "\n";
    }
  }
  if (report.ranking) {
    out += "Ranking: ";
    for (std::size_t i = 0; i < report.ranking->size(); ++i) {
      out += (i ? " > " : "") + sc.alternatives[(*report.ranking)[i]];
    }
    out += "\n";
  }
  if (!report.diagnostics.empty()) {
    out += "Diagnostics\n";
    for (auto const &d : report.diagnostics) {
      out += "  [" + d.kind + "] " + d.where + ": " + d.detail + "\n";
    }
  }
  return out;
}

} // namespace dfpil
