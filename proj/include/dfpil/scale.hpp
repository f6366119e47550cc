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

#include <charconv>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace dfpil {

/// Double-hierarchy linguistic scale: first hierarchy s_{-tau}..s_{tau},
/// second hierarchy o_{-zeta}..o_{zeta}. Labels are display metadata only.
struct LinguisticScale {
  int tau{4};
  int zeta{4};
  std::vector<std::string> first_labels;
  std::vector<std::string> second_labels;

  void validate() const {
    if (tau < 1 || zeta < 1) {
      throw error(error_kind::config, "scale: tau and zeta must be >= 1");
    }
    if (!first_labels.empty() && first_labels.size() != static_cast<std::size_t>(2 * tau + 1)) {
      throw error(error_kind::config, "scale: expected " + std::to_string(2 * tau + 1) +
                                          " first-hierarchy labels");
    }
    if (!second_labels.empty() &&
        second_labels.size() != static_cast<std::size_t>(2 * zeta + 1)) {
      throw error(error_kind::config, "scale: expected " + std::to_string(2 * zeta + 1) +
                                          " second-hierarchy labels");
    }
  }
};

/// Continuous term s_t<o_k>. The pair is a presentation form: two coords are
/// equivalent when their unit values coincide.
struct TermCoord {
  double t{0.0};
  double k{0.0};

  friend bool operator==(TermCoord const &, TermCoord const &) = default;
};

inline void check_range(LinguisticScale const &scale, TermCoord term) {
  if (!std::isfinite(term.t) || term.t < -scale.tau || term.t > scale.tau) {
    throw error(error_kind::range, "first-hierarchy coordinate t=" + std::to_string(term.t) +
                                       " outside [-" + std::to_string(scale.tau) + ", " +
                                       std::to_string(scale.tau) + "]");
  }
  if (!std::isfinite(term.k) || term.k < -scale.zeta || term.k > scale.zeta) {
    throw error(error_kind::range, "second-hierarchy coordinate k=" + std::to_string(term.k) +
                                       " outside [-" + std::to_string(scale.zeta) + ", " +
                                       std::to_string(scale.zeta) + "]");
  }
}

/// (k + (tau + t) zeta) / (2 zeta tau)
inline double to_unit(LinguisticScale const &scale, TermCoord term) {
  check_range(scale, term);
  double const tau = scale.tau;
  double const zeta = scale.zeta;
  double const gamma = (term.k + (tau + term.t) * zeta) / (2.0 * zeta * tau);
  // corner coords such as (tau, zeta) lie outside the unit image
  if (gamma < 0.0 || gamma > 1.0) {
    throw error(error_kind::range, "term (" + std::to_string(term.t) + ", " +
                                       std::to_string(term.k) + ") maps outside [0, 1]");
  }
  return gamma;
}

/// Canonical inverse: t = floor(2 tau gamma - tau), k = zeta (2 tau gamma - tau - t);
/// gamma = 1 resolves to (tau, 0).
inline TermCoord from_unit(LinguisticScale const &scale, double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw error(error_kind::range, "unit value " + std::to_string(gamma) + " outside [0, 1]");
  }
  double const tau = scale.tau;
  if (gamma == 1.0) {
    return {tau, 0.0};
  }
  double const x = 2.0 * tau * gamma - tau;
  double const t = std::floor(x);
  return {t, scale.zeta * (x - t)};
}

/// Componentwise sum; no clamping.
inline TermCoord term_add(LinguisticScale const &scale, TermCoord a, TermCoord b) {
  TermCoord const sum{a.t + b.t, a.k + b.k};
  if (std::abs(sum.t) > scale.tau || std::abs(sum.k) > scale.zeta) {
    throw error(error_kind::overflow, "term sum (" + std::to_string(sum.t) + ", " +
                                          std::to_string(sum.k) + ") leaves the scale");
  }
  return sum;
}

/// Literal rule lambda s_t<o_k> = s_{lambda t}<o_k>. It leaves k untouched, so it
/// does not agree with scaling in unit space; see unit_scale().
inline TermCoord term_scale(double lambda, TermCoord a) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw error(error_kind::range, "scalar " + std::to_string(lambda) + " outside [0, 1]");
  }
  return {lambda * a.t, a.k};
}

/// Scaling performed on the unit value: from_unit(lambda * to_unit(a)).
inline TermCoord unit_scale(LinguisticScale const &scale, double lambda, TermCoord a) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw error(error_kind::range, "scalar " + std::to_string(lambda) + " outside [0, 1]");
  }
  return from_unit(scale, lambda * to_unit(scale, a));
}

namespace detail {

inline std::string format_number(double value) {
  if (value == 0.0) {
    return "0"; // also folds -0
  }
  char buf[64];
  auto const res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

inline std::optional<double> parse_number(std::string_view &text) {
  double value = 0.0;
  auto const *first = text.data();
  if (!text.empty() && text.front() == '+') {
    ++first;
  }
  auto const res = std::from_chars(first, text.data() + text.size(), value);
  if (res.ec != std::errc{}) {
    return std::nullopt;
  }
  text.remove_prefix(static_cast<std::size_t>(res.ptr - text.data()));
  return value;
}

} // namespace detail

/// Renders `s<t>(o<k>)`, e.g. `s-2(o1)`.
inline std::string format_term(TermCoord term) {
  return "s" + detail::format_number(term.t) + "(o" + detail::format_number(term.k) + ")";
}

/// Parses `s<t>(o<k>)`; returns nullopt on malformed input.
inline std::optional<TermCoord> parse_term(std::string_view text) {
  if (text.empty() || text.front() != 's') {
    return std::nullopt;
  }
  text.remove_prefix(1);
  auto const t = detail::parse_number(text);
  if (!t || text.size() < 2 || text.substr(0, 2) != "(o") {
    return std::nullopt;
  }
  text.remove_prefix(2);
  auto const k = detail::parse_number(text);
  if (!k || text != ")") {
    return std::nullopt;
  }
  return TermCoord{*t, *k};
}

} // namespace dfpil
