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
#include "scale.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <compare>
#include <numbers>
#include <string>
#include <vector>

namespace dfpil {

// Interval-valued terms keep their endpoints as unit values; TermCoord is the
// presentation form recovered through from_unit().

/// One member of a DFPILTS: a linguistic interval and the expert's fuzzy degree
/// that the true evaluation falls inside it.
struct FuzzyIntervalTerm {
  double lo{0.5};
  double hi{0.5};
  double fd{0.0};

  static FuzzyIntervalTerm from_terms(LinguisticScale const &scale, TermCoord lower,
                                      TermCoord upper, double fd) {
    FuzzyIntervalTerm out{to_unit(scale, lower), to_unit(scale, upper), fd};
    out.validate();
    return out;
  }

  void validate() const {
    if (!(lo <= hi)) {
      throw error(error_kind::range, "interval lower endpoint above upper endpoint");
    }
    if (!(fd >= 0.0 && fd <= 1.0)) {
      throw error(error_kind::range, "fuzzy degree " + std::to_string(fd) + " outside [0, 1]");
    }
  }

  [[nodiscard]] double width() const { return hi - lo; }
};

/// Peak (minimum fuzzy degree) interval with certainty p = 1 - fd.
struct PeakIntervalTerm {
  double lo{0.5};
  double hi{0.5};
  double p{1.0};
  /// Set when an interval operator had to clamp the result into [0, 1].
  bool clamped{false};

  static PeakIntervalTerm from_terms(LinguisticScale const &scale, TermCoord lower,
                                     TermCoord upper, double p) {
    return from_unit_interval(to_unit(scale, lower), to_unit(scale, upper), p);
  }

  static PeakIntervalTerm point(LinguisticScale const &scale, TermCoord term, double p) {
    return from_terms(scale, term, term, p);
  }

  static PeakIntervalTerm from_unit_interval(double lo, double hi, double p) {
    if (!(lo >= 0.0 && hi <= 1.0)) {
      throw error(error_kind::range, "interval endpoints outside [0, 1]");
    }
    if (!(lo <= hi)) {
      throw error(error_kind::range, "interval lower endpoint above upper endpoint");
    }
    if (!(p >= 0.0 && p <= 1.0)) {
      throw error(error_kind::range, "certainty " + std::to_string(p) + " outside [0, 1]");
    }
    return {lo, hi, p, false};
  }

  [[nodiscard]] TermCoord lower(LinguisticScale const &scale) const { return from_unit(scale, lo); }
  [[nodiscard]] TermCoord upper(LinguisticScale const &scale) const { return from_unit(scale, hi); }
  [[nodiscard]] bool is_point() const { return lo == hi; }
};

/// Double fuzzy probabilistic interval linguistic term set.
/// Sum of fd == 0: the intervals cover complete information; > 0: partial
/// uncertainty; == 1: complete uncertainty.
struct DFPILTS {
  std::vector<FuzzyIntervalTerm> intervals;

  void validate() const {
    if (intervals.empty()) {
      throw error(error_kind::config, "DFPILTS needs at least one interval");
    }
    double total = 0.0;
    for (auto const &iv : intervals) {
      iv.validate();
      total += iv.fd;
    }
    if (total > 1.0 + 1e-12) {
      throw error(error_kind::range, "sum of fuzzy degrees exceeds 1");
    }
  }
};

/// Minimum-fd member. Ties go to the narrowest interval, then the smallest lower endpoint.
inline PeakIntervalTerm peak(DFPILTS const &set) {
  set.validate();
  auto const best = std::min_element(
      set.intervals.begin(), set.intervals.end(), [](auto const &a, auto const &b) {
        if (a.fd != b.fd) return a.fd < b.fd;
        if (a.width() != b.width()) return a.width() < b.width();
        return a.lo < b.lo;
      });
  return PeakIntervalTerm{best->lo, best->hi, 1.0 - best->fd, false};
}

struct NormalPeakModel {
  double mu{0.5};
  double sigma{0.0};
};

/// The peak interval spans 6 sigma of a normal density centred on its midpoint.
inline NormalPeakModel normal_model(PeakIntervalTerm const &term) {
  return {(term.lo + term.hi) / 2.0, (term.hi - term.lo) / 6.0};
}

/// Normal pdf in unit space; requires sigma > 0.
inline auto normal_density(NormalPeakModel model) {
  if (!(model.sigma > 0.0)) {
    throw error(error_kind::range, "normal density needs a positive sigma");
  }
  return [model](double x) {
    double const z = (x - model.mu) / model.sigma;
    return std::exp(-0.5 * z * z) / (model.sigma * std::sqrt(2.0 * std::numbers::pi));
  };
}

namespace detail {

template <typename Density>
double integrate_unit(Density &&density, double from, double to) {
  if (from == to) {
    return 0.0;
  }
  double const sign = from < to ? 1.0 : -1.0;
  double const a = std::min(from, to);
  double const b = std::max(from, to);
  auto checked = [&density](double x) {
    double const y = density(x);
    if (!std::isfinite(y)) {
      throw error(error_kind::numerical, "density is not finite at " + std::to_string(x));
    }
    return y;
  };
  double abs_error = 0.0;
  double const value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      checked, a, b, 20, 1e-12, &abs_error);
  if (abs_error > 1e-9) {
    throw error(error_kind::numerical, "quadrature did not reach 1e-9");
  }
  return sign * value;
}

} // namespace detail

/// Linguistic definite integral: quadrature of a unit-space density over the
/// image [to_unit(a), to_unit(b)]. Antisymmetric in its bounds.
template <typename Density>
double linguistic_integral(LinguisticScale const &scale, Density &&density, TermCoord a,
                           TermCoord b) {
  return detail::integrate_unit(std::forward<Density>(density), to_unit(scale, a),
                                to_unit(scale, b));
}

/// Score under the normal peak model: the midpoint of the unit endpoints.
inline double score(PeakIntervalTerm const &term) { return normal_model(term).mu; }

/// Score for an explicit density over the peak interval: integral of x f(x).
/// The density should integrate to 1 over the interval.
template <typename Density>
double score_with_density(PeakIntervalTerm const &term, Density &&density) {
  if (term.is_point()) {
    return term.lo;
  }
  return detail::integrate_unit([&density](double x) { return x * density(x); }, term.lo,
                                term.hi);
}

inline TermCoord expectation_term(LinguisticScale const &scale, PeakIntervalTerm const &term) {
  return from_unit(scale, score(term));
}

inline double sigma(PeakIntervalTerm const &term) { return normal_model(term).sigma; }

/// Deviation as a term, offset by the centre s0<o0>.
inline TermCoord linguistic_sigma(LinguisticScale const &scale, PeakIntervalTerm const &term) {
  return from_unit(scale, sigma(term) + 0.5);
}

namespace detail {

inline PeakIntervalTerm from_model(NormalPeakModel model, double p) {
  double lo = model.mu - 3.0 * model.sigma;
  double hi = model.mu + 3.0 * model.sigma;
  bool clamped = false;
  if (lo < 0.0) { lo = 0.0; clamped = true; }
  if (hi > 1.0) { hi = 1.0; clamped = true; }
  if (lo > 1.0) { lo = 1.0; clamped = true; }
  if (hi < 0.0) { hi = 0.0; clamped = true; }
  return {lo, hi, p, clamped};
}

} // namespace detail

/// Sum of the two normal models; the result is clamped into [0, 1] and flagged.
inline PeakIntervalTerm interval_add(PeakIntervalTerm const &a, PeakIntervalTerm const &b) {
  auto const ma = normal_model(a);
  auto const mb = normal_model(b);
  NormalPeakModel const sum{ma.mu + mb.mu, std::hypot(ma.sigma, mb.sigma)};
  return detail::from_model(sum, std::min(a.p, b.p));
}

/// Precision-weighted fusion of the two normal models.
inline PeakIntervalTerm interval_fuse(PeakIntervalTerm const &a, PeakIntervalTerm const &b) {
  auto const ma = normal_model(a);
  auto const mb = normal_model(b);
  double const p = std::min(a.p, b.p);
  double const va = ma.sigma * ma.sigma;
  double const vb = mb.sigma * mb.sigma;
  if (va == 0.0 && vb == 0.0) {
    if (ma.mu != mb.mu) {
      throw error(error_kind::degenerate_fusion, "cannot fuse two distinct point terms");
    }
    return detail::from_model(ma, p);
  }
  if (va == 0.0) return detail::from_model(ma, p);
  if (vb == 0.0) return detail::from_model(mb, p);
  NormalPeakModel const fused{(ma.mu * vb + mb.mu * va) / (va + vb), std::sqrt(va * vb / (va + vb))};
  return detail::from_model(fused, p);
}

inline PeakIntervalTerm interval_scale(double lambda, PeakIntervalTerm const &a) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw error(error_kind::range, "scalar " + std::to_string(lambda) + " outside [0, 1]");
  }
  auto const m = normal_model(a);
  return detail::from_model({lambda * m.mu, lambda * m.sigma}, a.p);
}

/// Higher score wins; equal scores go to the smaller deviation.
inline std::strong_ordering compare(PeakIntervalTerm const &a, PeakIntervalTerm const &b) {
  double const sa = score(a);
  double const sb = score(b);
  if (sa > sb) return std::strong_ordering::greater;
  if (sa < sb) return std::strong_ordering::less;
  double const da = sigma(a);
  double const db = sigma(b);
  if (da < db) return std::strong_ordering::greater;
  if (da > db) return std::strong_ordering::less;
  return std::strong_ordering::equal;
}

// Probabilistic linguistic term set baseline.

struct PltsEntry {
  TermCoord term;
  double prob{0.0};
};

struct PLTS {
  std::vector<PltsEntry> entries;

  void validate() const {
    double total = 0.0;
    for (auto const &e : entries) {
      if (!(e.prob >= 0.0)) {
        throw error(error_kind::range, "PLTS probability must be nonnegative");
      }
      total += e.prob;
    }
    if (total > 1.0 + 1e-12) {
      throw error(error_kind::range, "PLTS probabilities sum above 1");
    }
  }

  [[nodiscard]] double total() const {
    double total = 0.0;
    for (auto const &e : entries) total += e.prob;
    return total;
  }
};

/// Probability-weighted mean subscript. Both hierarchies are averaged, which is
/// the same as averaging unit values since the transform is affine.
inline TermCoord plts_score(PLTS const &set) {
  set.validate();
  double const total = set.total();
  if (!(total > 0.0)) {
    throw error(error_kind::empty_evidence, "PLTS carries no probability mass");
  }
  TermCoord mean{0.0, 0.0};
  for (auto const &e : set.entries) {
    mean.t += e.term.t * e.prob;
    mean.k += e.term.k * e.prob;
  }
  mean.t /= total;
  mean.k /= total;
  return mean;
}

/// Root of sum (p (r - mean))^2 / sum p, with r the position t + k/zeta in
/// first-hierarchy units.
inline double plts_deviation(LinguisticScale const &scale, PLTS const &set) {
  TermCoord const mean = plts_score(set);
  double const mean_r = mean.t + mean.k / scale.zeta;
  double acc = 0.0;
  for (auto const &e : set.entries) {
    double const d = e.prob * (e.term.t + e.term.k / scale.zeta - mean_r);
    acc += d * d;
  }
  return std::sqrt(acc / set.total());
}

} // namespace dfpil
