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
#include "scale.hpp"
#include "terms.hpp"

#include <nlohmann/json.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace dfpil {

struct Expert {
  std::string id;
  double trust{1.0};
};

enum class WeightScheme { power, reshape };

struct MarkovSpec {
  std::vector<LinguisticMarkovAssessment> assessments; // one per expert
  int periods{1};
  int initial_iterations{1};
  std::size_t origin{0};
  std::vector<double> updates; // per-period origin probabilities, reshape scheme only
  WeightScheme scheme{WeightScheme::power};
};

/// Injected stage outputs; each bypasses exactly its own stage.
struct StageOverrides {
  std::optional<TransitionMatrix> transition_matrix;
  std::optional<PeriodWeights> period_weights;
  std::map<std::size_t, std::vector<double>> priority_vectors;      // by attribute
  std::map<std::size_t, std::vector<double>> expert_weight_vectors; // by attribute
};

struct Scenario {
  LinguisticScale scale;
  std::vector<std::string> attributes;
  std::vector<std::string> alternatives;
  std::vector<Expert> experts;
  BlendCoefficients blend;
  MarkovSpec markov;
  /// preferences[attribute][expert]; an attribute may be empty when its
  /// priority vector is overridden.
  std::vector<std::vector<PreferenceRelation>> preferences;
  StageOverrides overrides;
  bool paper_literal{false};
  /// Non-fatal events noticed while loading (renormalised rows, loose sums).
  Diagnostics load_notes;

  [[nodiscard]] std::vector<double> trust() const {
    std::vector<double> out;
    for (auto const &e : experts) out.push_back(e.trust);
    return out;
  }
};

namespace detail {

using nlohmann::json;

// Collects every violation rather than stopping at the first one.
class Issues {
public:
  void add(std::string where, std::string what) {
    items_.push_back(std::move(where) + ": " + std::move(what));
  }
  [[nodiscard]] bool empty() const { return items_.empty(); }
  [[nodiscard]] std::vector<std::string> const &items() const { return items_; }

private:
  std::vector<std::string> items_;
};

inline std::optional<double> read_number(json const &node, std::string const &where, Issues &issues) {
  if (!node.is_number()) {
    issues.add(where, "expected a number");
    return std::nullopt;
  }
  double const v = node.get<double>();
  if (!std::isfinite(v)) {
    issues.add(where, "number is not finite");
    return std::nullopt;
  }
  return v;
}

inline std::optional<TermCoord> read_coord(json const &node, std::string const &where, Issues &issues) {
  if (node.is_string()) {
    auto parsed = parse_term(node.get<std::string>());
    if (!parsed) issues.add(where, "malformed term literal '" + node.get<std::string>() + "'");
    return parsed;
  }
  if (node.is_array() && node.size() == 2 && node[0].is_number() && node[1].is_number()) {
    return TermCoord{node[0].get<double>(), node[1].get<double>()};
  }
  issues.add(where, "expected [t, k] or a term literal such as \"s1(o-2)\"");
  return std::nullopt;
}

inline std::optional<PeakIntervalTerm> read_term(LinguisticScale const &scale, json const &node,
                                                 std::string const &where, Issues &issues) {
  if (!node.is_object() || !node.contains("p")) {
    issues.add(where, "expected {\"interval\": [lo, hi], \"p\": ..} or {\"point\": c, \"p\": ..}");
    return std::nullopt;
  }
  auto const p = read_number(node["p"], where + ".p", issues);
  std::optional<TermCoord> lo;
  std::optional<TermCoord> hi;
  if (node.contains("interval")) {
    auto const &iv = node["interval"];
    if (!iv.is_array() || iv.size() != 2) {
      issues.add(where + ".interval", "expected two endpoints");
      return std::nullopt;
    }
    lo = read_coord(iv[0], where + ".interval[0]", issues);
    hi = read_coord(iv[1], where + ".interval[1]", issues);
  } else if (node.contains("point")) {
    lo = hi = read_coord(node["point"], where + ".point", issues);
  } else {
    issues.add(where, "term needs an \"interval\" or a \"point\"");
    return std::nullopt;
  }
  if (!p || !lo || !hi) return std::nullopt;
  try {
    return PeakIntervalTerm::from_terms(scale, *lo, *hi, *p);
  } catch (error const &e) {
    issues.add(where, e.what());
    return std::nullopt;
  }
}

inline std::optional<std::vector<PeakIntervalTerm>>
read_term_matrix(LinguisticScale const &scale, json const &node, std::size_t size,
                 std::string const &where, Issues &issues) {
  if (!node.is_array() || node.size() != size) {
    issues.add(where, "expected " + std::to_string(size) + " rows");
    return std::nullopt;
  }
  std::vector<PeakIntervalTerm> out;
  bool ok = true;
  for (std::size_t i = 0; i < size; ++i) {
    auto const &row = node[i];
    std::string const row_where = where + "[" + std::to_string(i) + "]";
    if (!row.is_array() || row.size() != size) {
      issues.add(row_where, "expected " + std::to_string(size) + " entries");
      ok = false;
      continue;
    }
    for (std::size_t j = 0; j < size; ++j) {
      auto term = read_term(scale, row[j], row_where + "[" + std::to_string(j) + "]", issues);
      ok = ok && term.has_value();
      out.push_back(term.value_or(PeakIntervalTerm{}));
    }
  }
  if (!ok) return std::nullopt;
  return out;
}

inline std::optional<std::vector<double>> read_vector(json const &node, std::size_t size,
                                                      std::string const &where, Issues &issues) {
  if (!node.is_array() || node.size() != size) {
    issues.add(where, "expected " + std::to_string(size) + " numbers");
    return std::nullopt;
  }
  std::vector<double> out;
  bool ok = true;
  for (std::size_t i = 0; i < size; ++i) {
    auto v = read_number(node[i], where + "[" + std::to_string(i) + "]", issues);
    ok = ok && v.has_value();
    out.push_back(v.value_or(0.0));
  }
  if (!ok) return std::nullopt;
  return out;
}

inline std::optional<Eigen::MatrixXd> read_matrix(json const &node, std::size_t rows,
                                                  std::size_t cols, std::string const &where,
                                                  Issues &issues) {
  if (!node.is_array() || node.size() != rows) {
    issues.add(where, "expected " + std::to_string(rows) + " rows");
    return std::nullopt;
  }
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  bool ok = true;
  for (std::size_t i = 0; i < rows; ++i) {
    auto row = read_vector(node[i], cols, where + "[" + std::to_string(i) + "]", issues);
    if (!row) {
      ok = false;
      continue;
    }
    for (std::size_t j = 0; j < cols; ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = (*row)[j];
    }
  }
  if (!ok) return std::nullopt;
  return out;
}

inline std::vector<std::string> read_names(json const &root, char const *key, Issues &issues) {
  std::vector<std::string> out;
  if (!root.contains(key) || !root[key].is_array() || root[key].empty()) {
    issues.add(key, "expected a nonempty list of names");
    return out;
  }
  for (auto const &n : root[key]) {
    if (!n.is_string()) {
      issues.add(key, "names must be strings");
      return {};
    }
    out.push_back(n.get<std::string>());
  }
  return out;
}

inline std::optional<std::size_t> index_of(std::vector<std::string> const &names,
                                           std::string const &name) {
  auto const it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) return std::nullopt;
  return static_cast<std::size_t>(it - names.begin());
}

inline void note_loose_sum(Diagnostics &notes, std::string const &where, double sum) {
  if (std::abs(sum - 1.0) > 1e-9) {
    note(&notes, "loose_sum", where, "sums to " + std::to_string(sum) + "; used as given");
  }
}

inline std::string position_of(std::string const &text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

} // namespace detail

/// Parses and validates a scenario document. Throws a parse error for
/// malformed JSON and a validation error listing every violation otherwise.
inline Scenario parse_scenario(std::string const &text) {
  using detail::json;
  json root;
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
    throw error(error_kind::parse, "scenario is empty");
  }
  try {
    root = json::parse(text);
  } catch (json::parse_error const &e) {
    throw error(error_kind::parse, "scenario is not valid JSON at " +
                                       detail::position_of(text, e.byte > 0 ? e.byte - 1 : 0));
  }
  if (!root.is_object()) {
    throw error(error_kind::validation, "scenario must be a JSON object");
  }

  detail::Issues issues;
  Scenario sc;

  if (!root.contains("format") || root["format"] != 1) {
    issues.add("format", "a \"format\": 1 field is required");
  }

  if (root.contains("scale")) {
    auto const &s = root["scale"];
    sc.scale.tau = s.value("tau", 0);
    sc.scale.zeta = s.value("zeta", 0);
    sc.scale.first_labels = s.value("first_labels", std::vector<std::string>{});
    sc.scale.second_labels = s.value("second_labels", std::vector<std::string>{});
    try {
      sc.scale.validate();
    } catch (error const &e) {
      issues.add("scale", e.what());
      sc.scale = LinguisticScale{};
    }
  } else {
    issues.add("scale", "missing");
  }

  sc.attributes = detail::read_names(root, "attributes", issues);
  sc.alternatives = detail::read_names(root, "alternatives", issues);
  std::size_t const q = sc.attributes.size();
  std::size_t const m = sc.alternatives.size();

  if (!root.contains("experts") || !root["experts"].is_array() || root["experts"].empty()) {
    issues.add("experts", "expected a nonempty list of {\"id\", \"trust\"}");
  } else {
    for (std::size_t k = 0; k < root["experts"].size(); ++k) {
      auto const &e = root["experts"][k];
      std::string const where = "experts[" + std::to_string(k) + "]";
      Expert expert{e.value("id", "e" + std::to_string(k + 1)), 0.0};
      if (auto trust = detail::read_number(e.value("trust", json()), where + ".trust", issues)) {
        if (*trust < 0.0 || *trust > 1.0) issues.add(where + ".trust", "must lie in [0, 1]");
        expert.trust = *trust;
      }
      sc.experts.push_back(expert);
    }
    double total = 0.0;
    for (auto const &e : sc.experts) total += e.trust;
    if (total <= 0.0) issues.add("experts", "trust degrees sum to zero");
  }
  std::size_t const n = sc.experts.size();

  if (root.contains("blend")) {
    auto const &b = root["blend"];
    sc.blend = {b.value("alpha", 0.0), b.value("beta", 0.0), b.value("gamma", 0.0)};
    try {
      sc.blend.validate();
    } catch (error const &e) {
      issues.add("blend", e.what());
    }
  }

  sc.paper_literal = root.value("paper_literal", false);

  // overrides come first: they decide which inputs may be omitted
  if (root.contains("overrides")) {
    auto const &ov = root["overrides"];
    if (ov.contains("transition_matrix") && q > 0) {
      if (auto mat = detail::read_matrix(ov["transition_matrix"], q, q,
                                         "overrides.transition_matrix", issues)) {
        try {
          sc.overrides.transition_matrix =
              TransitionMatrix::renormalized(*mat, 1e-3, &sc.load_notes);
        } catch (error const &e) {
          for (auto const &d : e.details()) issues.add("overrides.transition_matrix", d);
        }
      }
    }
    if (ov.contains("priority_vectors")) {
      for (auto const &[name, vec] : ov["priority_vectors"].items()) {
        std::string const where = "overrides.priority_vectors." + name;
        auto const idx = detail::index_of(sc.attributes, name);
        if (!idx) {
          issues.add(where, "unknown attribute");
          continue;
        }
        if (auto v = detail::read_vector(vec, m, where, issues)) {
          double sum = 0.0;
          for (double x : *v) {
            if (x < 0.0) issues.add(where, "entries must be nonnegative");
            sum += x;
          }
          detail::note_loose_sum(sc.load_notes, where, sum);
          sc.overrides.priority_vectors[*idx] = *v;
        }
      }
    }
    if (ov.contains("expert_weight_vectors")) {
      for (auto const &[name, vec] : ov["expert_weight_vectors"].items()) {
        std::string const where = "overrides.expert_weight_vectors." + name;
        auto const idx = detail::index_of(sc.attributes, name);
        if (!idx) {
          issues.add(where, "unknown attribute");
          continue;
        }
        if (auto v = detail::read_vector(vec, n, where, issues)) {
          double sum = 0.0;
          for (double x : *v) {
            if (x < 0.0) issues.add(where, "entries must be nonnegative");
            sum += x;
          }
          detail::note_loose_sum(sc.load_notes, where, sum);
          sc.overrides.expert_weight_vectors[*idx] = *v;
        }
      }
    }
  }

  if (!root.contains("markov") || !root["markov"].is_object()) {
    issues.add("markov", "missing");
  } else {
    auto const &mk = root["markov"];
    auto &spec = sc.markov;
    spec.periods = mk.value("periods", 0);
    spec.initial_iterations = mk.value("initial_iterations", 1);
    if (spec.periods < 1) issues.add("markov.periods", "must be >= 1");
    if (spec.initial_iterations < 1) issues.add("markov.initial_iterations", "must be >= 1");
    std::string const origin = mk.value("origin", std::string{});
    if (auto idx = detail::index_of(sc.attributes, origin)) {
      spec.origin = *idx;
    } else {
      issues.add("markov.origin", "'" + origin + "' is not an attribute");
    }
    std::string const scheme = mk.value("scheme", std::string{"power"});
    if (scheme == "power") {
      spec.scheme = WeightScheme::power;
    } else if (scheme == "reshape") {
      spec.scheme = WeightScheme::reshape;
    } else {
      issues.add("markov.scheme", "expected \"power\" or \"reshape\"");
    }
    if (mk.contains("updates") && spec.periods >= 1) {
      if (auto v = detail::read_vector(mk["updates"], static_cast<std::size_t>(spec.periods),
                                       "markov.updates", issues)) {
        for (double u : *v) {
          if (u < 0.0 || u > 1.0) issues.add("markov.updates", "entries must lie in [0, 1]");
        }
        spec.updates = *v;
      }
    } else if (spec.scheme == WeightScheme::reshape) {
      issues.add("markov.updates", "the reshape scheme needs one update per period");
    }
    if (mk.contains("assessments")) {
      auto const &list = mk["assessments"];
      if (!list.is_array() || list.size() != n) {
        issues.add("markov.assessments", "expected one assessment per expert");
      } else {
        for (std::size_t k = 0; k < n; ++k) {
          auto const where = "markov.assessments[" + std::to_string(k) + "]";
          if (auto entries = detail::read_term_matrix(sc.scale, list[k], q, where, issues)) {
            spec.assessments.emplace_back(q, std::move(*entries));
          }
        }
      }
    } else if (!sc.overrides.transition_matrix) {
      issues.add("markov.assessments", "required unless overrides.transition_matrix is given");
    }
  }

  if (root.contains("overrides") && root["overrides"].contains("period_weights") && q > 0 &&
      sc.markov.periods >= 1) {
    auto const rows = static_cast<std::size_t>(sc.markov.periods);
    if (auto mat = detail::read_matrix(root["overrides"]["period_weights"], rows, q,
                                       "overrides.period_weights", issues)) {
      for (Eigen::Index t = 0; t < mat->rows(); ++t) {
        if ((mat->row(t).array() < 0.0).any()) {
          issues.add("overrides.period_weights[" + std::to_string(t) + "]",
                     "entries must be nonnegative");
        }
        detail::note_loose_sum(sc.load_notes, "overrides.period_weights[" + std::to_string(t) + "]",
                               mat->row(t).sum());
      }
      sc.overrides.period_weights = *mat;
    }
  }

  sc.preferences.assign(q, {});
  json const prefs = root.value("preferences", json::object());
  for (std::size_t a = 0; a < q; ++a) {
    std::string const &name = sc.attributes[a];
    std::string const where = "preferences." + name;
    if (!prefs.contains(name)) {
      if (!sc.overrides.priority_vectors.contains(a)) {
        issues.add(where, "required unless overrides.priority_vectors." + name + " is given");
      }
      continue;
    }
    auto const &list = prefs[name];
    if (!list.is_array() || list.size() != n) {
      issues.add(where, "expected one relation per expert");
      continue;
    }
    for (std::size_t k = 0; k < n; ++k) {
      std::string const rel_where = where + "[" + std::to_string(k) + "]";
      auto entries = detail::read_term_matrix(sc.scale, list[k], m, rel_where, issues);
      if (!entries) continue;
      PreferenceRelation rel(m, std::move(*entries));
      for (auto const &v : validate(rel)) {
        issues.add(rel_where + "(" + std::to_string(v.i + 1) + "," + std::to_string(v.j + 1) + ")",
                   to_string(v.rule));
      }
      sc.preferences[a].push_back(std::move(rel));
    }
  }
  for (auto const &[name, unused] : prefs.items()) {
    if (!detail::index_of(sc.attributes, name)) {
      issues.add("preferences." + name, "unknown attribute");
    }
  }

  if (!issues.empty()) {
    throw error(error_kind::validation,
                "scenario has " + std::to_string(issues.items().size()) + " violation(s)",
                issues.items());
  }
  return sc;
}

inline Scenario load_scenario(std::string const &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw error(error_kind::parse, "cannot open scenario '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

} // namespace dfpil
