// Copyright 2026 The qwalk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Post-processing: Pauli-spectrum spacing ratios against the Poisson
// reference, cumulative time averages, light-cone fronts and log fits.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "qwalk/doublon.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/magic.hpp"

namespace qwalk {

inline constexpr double kMergeThreshold = 1e-12;
inline constexpr int kDefaultBins = 25;
inline constexpr double kFastFrontThreshold = 0.01;
inline constexpr double kBrightFrontThreshold = 0.2;

/// Density-normalized histogram on [0, 1].
struct Histogram {
  std::vector<double> edges;
  std::vector<double> density;

  double centre(std::size_t b) const { return 0.5 * (edges[b] + edges[b + 1]); }
  double width(std::size_t b) const { return edges[b + 1] - edges[b]; }
};

inline Histogram unit_histogram(std::span<const double> samples, int bins = kDefaultBins) {
  detail::require(bins > 0, "histogram needs at least one bin");
  detail::require(!samples.empty(), "histogram of an empty sample");
  Histogram h;
  h.edges.resize(static_cast<std::size_t>(bins) + 1);
  for (int b = 0; b <= bins; ++b) h.edges[static_cast<std::size_t>(b)] = static_cast<double>(b) / bins;
  std::vector<double> counts(static_cast<std::size_t>(bins), 0.0);
  for (double r : samples) {
    detail::require(r >= 0.0 && r <= 1.0, "histogram sample outside [0, 1]");
    const auto b = std::min(static_cast<std::size_t>(r * bins), static_cast<std::size_t>(bins - 1));
    counts[b] += 1.0;
  }
  const double norm = static_cast<double>(samples.size()) / bins;
  h.density.resize(counts.size());
  for (std::size_t b = 0; b < counts.size(); ++b) h.density[b] = counts[b] / norm;
  return h;
}

struct SpacingStats {
  std::vector<double> values;
  std::vector<double> spacings;
  std::vector<double> ratios;
  Histogram histogram;
  double mean_ratio = 0.0;

  std::size_t samples() const { return ratios.size(); }
};

inline double mean(std::span<const double> xs) {
  detail::require(!xs.empty(), "mean of an empty sample");
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

/// Sorts the nonzero values (|c| > tau), merges neighbours closer than
/// `merge`, and forms r_n = min(s_n, s_{n-1}) / max(s_n, s_{n-1}).
inline SpacingStats spacing_ratios(std::span<const double> values, int bins = kDefaultBins,
                                   double tau = kZeroThreshold, double merge = kMergeThreshold) {
  std::vector<double> sorted;
  sorted.reserve(values.size());
  for (double v : values)
    if (std::abs(v) > tau) sorted.push_back(v);
  std::sort(sorted.begin(), sorted.end());

  SpacingStats out;
  for (double v : sorted)
    if (out.values.empty() || v - out.values.back() >= merge) out.values.push_back(v);
  if (out.values.size() < 3)
    throw InvalidArgument("spacing ratios need at least 3 distinct nonzero values, got " +
                          std::to_string(out.values.size()));

  out.spacings.resize(out.values.size() - 1);
  for (std::size_t n = 0; n + 1 < out.values.size(); ++n)
    out.spacings[n] = out.values[n + 1] - out.values[n];
  out.ratios.resize(out.spacings.size() - 1);
  for (std::size_t n = 1; n < out.spacings.size(); ++n) {
    const double a = out.spacings[n], b = out.spacings[n - 1];
    out.ratios[n - 1] = std::min(a, b) / std::max(a, b);
  }
  out.histogram = unit_histogram(out.ratios, bins);
  out.mean_ratio = mean(out.ratios);
  return out;
}

/// P(r) = 2 / (1 + r)^2 on [0, 1].
inline double poisson_reference(double r) {
  if (!(r >= 0.0 && r <= 1.0)) throw InvalidArgument("Poisson ratio density defined on [0, 1]");
  return 2.0 / ((1.0 + r) * (1.0 + r));
}

/// Mean ratio under the Poisson density, 2 ln 2 - 1.
inline constexpr double kPoissonMeanRatio = 2.0 * std::numbers::ln2 - 1.0;

/// Largest |density - bin average of P| over the histogram bins.
inline double poisson_sup_distance(const Histogram& h) {
  double worst = 0.0;
  for (std::size_t b = 0; b < h.density.size(); ++b) {
    const double lo = h.edges[b], hi = h.edges[b + 1];
    const double reference = 2.0 * (1.0 / (1.0 + lo) - 1.0 / (1.0 + hi)) / (hi - lo);
    worst = std::max(worst, std::abs(h.density[b] - reference));
  }
  return worst;
}

/// <M2>_c(t) = (1/t) int_0^t M2, trapezoidal; the t = 0 value is M2(0).
inline MagicSeries cumulative_average(const MagicSeries& series) {
  const auto& t = series.times;
  detail::require(!t.empty() && t.size() == series.m2.size(), "series is empty or ragged");
  detail::require(std::abs(t[0]) < 1e-12, "cumulative average needs a grid starting at t = 0");
  for (std::size_t n = 1; n < t.size(); ++n)
    detail::require(t[n] > t[n - 1], "time grid must be strictly increasing");
  MagicSeries out = series;
  double integral = 0.0;
  out.m2[0] = series.m2[0];
  for (std::size_t n = 1; n < t.size(); ++n) {
    integral += 0.5 * (series.m2[n] + series.m2[n - 1]) * (t[n] - t[n - 1]);
    out.m2[n] = integral / t[n];
  }
  return out;
}

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  /// root-mean-square deviation from the line
  double residual = 0.0;
};

inline LinearFit least_squares(std::span<const double> x, std::span<const double> y) {
  detail::require(x.size() == y.size(), "fit inputs differ in length");
  detail::require(x.size() >= 2, "fit needs at least two points");
  const double mx = mean(x), my = mean(y);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  detail::require(sxx > 0.0, "fit abscissae are all equal");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / static_cast<double>(x.size()));
  return fit;
}

/// Least squares of M2 against log2 t over the window.
inline LinearFit log_growth_fit(const MagicSeries& series, TimeWindow window) {
  std::vector<double> x, y;
  for (std::size_t n = 0; n < series.times.size(); ++n) {
    if (!window.contains(series.times[n])) continue;
    detail::require(series.times[n] > 0.0, "log fit needs t > 0");
    x.push_back(std::log2(series.times[n]));
    y.push_back(series.m2[n]);
  }
  if (x.empty()) throw InvalidArgument("log-growth window contains no samples");
  return least_squares(x, y);
}

/// Per-time outermost sites deviating from the <Z> = +1 background by more
/// than a threshold, and the fitted front speed.
struct FrontFit {
  std::vector<double> times;
  std::vector<int> left;   // -1 when no site exceeds the threshold
  std::vector<int> right;  // -1 when no site exceeds the threshold
  double velocity_left = 0.0;
  double velocity_right = 0.0;
  double velocity = 0.0;
  double residual = 0.0;
};

/// profiles[n][j] = <Z_j> at times[n]. Velocities are least-squares slopes
/// of the right front and of the mirrored left front over `window`;
/// `velocity` is their mean.
inline FrontFit light_cone_front(std::span<const double> times,
                                 const std::vector<std::vector<double>>& profiles,
                                 TimeWindow window, double threshold = kFastFrontThreshold) {
  detail::require(threshold > 0.0 && threshold < 1.0, "front threshold must lie in (0, 1)");
  detail::require(times.size() == profiles.size(), "one profile per time required");
  FrontFit fit;
  fit.times.assign(times.begin(), times.end());
  std::vector<double> tw, lw, rw;
  for (std::size_t n = 0; n < times.size(); ++n) {
    int lo = -1, hi = -1;
    const auto& z = profiles[n];
    for (std::size_t j = 0; j < z.size(); ++j) {
      if (std::abs(z[j] - 1.0) > threshold) {
        if (lo < 0) lo = static_cast<int>(j);
        hi = static_cast<int>(j);
      }
    }
    fit.left.push_back(lo);
    fit.right.push_back(hi);
    if (!window.contains(times[n])) continue;
    if (hi < 0)
      throw InvalidArgument("no site deviates by more than " + std::to_string(threshold) +
                            " at t = " + std::to_string(times[n]));
    tw.push_back(times[n]);
    lw.push_back(-static_cast<double>(lo));
    rw.push_back(static_cast<double>(hi));
  }
  if (tw.size() < 2) throw InvalidArgument("front window needs at least two times");
  const auto fl = least_squares(tw, lw);
  const auto fr = least_squares(tw, rw);
  fit.velocity_left = fl.slope;
  fit.velocity_right = fr.slope;
  fit.velocity = 0.5 * (fl.slope + fr.slope);
  fit.residual = std::sqrt(0.5 * (fl.residual * fl.residual + fr.residual * fr.residual));
  return fit;
}

}  // namespace qwalk
