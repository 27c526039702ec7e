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

#include "qwalk/doublon.hpp"

#include <gtest/gtest.h>

#include <vector>

using namespace qwalk;

TEST(DoublonParams, formulas) {
  const auto p2 = doublon_params(1.0, 2.0);
  EXPECT_DOUBLE_EQ(p2.j_eff, 0.25);
  EXPECT_DOUBLE_EQ(p2.v_doublon, 0.25);
  EXPECT_DOUBLE_EQ(doublon_params(1.0, 0.5).j_eff, 1.0);
  EXPECT_DOUBLE_EQ(doublon_params(1.0, 4.0).h_eff, 2.0625);
  for (double delta : {0.3, 1.0, 2.0, 7.5, 100.0})
    EXPECT_DOUBLE_EQ(doublon_params(1.0, delta).v_doublon * delta, 0.5);
  EXPECT_THROW(doublon_params(1.0, 0.0), InvalidArgument);
  EXPECT_THROW(doublon_params(1.0, -2.0), InvalidArgument);
}

TEST(DoublonSeries, zero_at_time_zero) {
  const double t0 = 0.0;
  const auto s = doublon_magic_series({16, 1.0, 3.0, 0.0, 2}, std::span<const double>(&t0, 1));
  EXPECT_NEAR(s.m2[0], 0.0, 1e-14);
}

TEST(DoublonSeries, matches_bessel_form_before_the_boundary) {
  const ChainSpec spec{128, 1.0, 8.0, 0.0, 2};
  const std::vector<double> times{8.0, 32.0, 64.0};
  const auto s = doublon_magic_series(spec, times);
  for (std::size_t n = 0; n < times.size(); ++n)
    EXPECT_NEAR(s.m2[n], m2_bessel(times[n], 1.0 / 16.0, 600), 1e-8) << "t=" << times[n];
}

TEST(DoublonSeries, independent_of_effective_field) {
  const ChainSpec spec{24, 1.0, 3.0, 0.0, 2};
  const std::vector<double> times{0.5, 5.0, 40.0, 300.0};
  const auto without = doublon_magic_series(spec, times, false);
  const auto with = doublon_magic_series(spec, times, true);
  for (std::size_t n = 0; n < times.size(); ++n) EXPECT_NEAR(with.m2[n], without.m2[n], 1e-10);
}

TEST(DoublonSeries, slower_walker_for_larger_anisotropy) {
  const std::vector<double> times{16.0};
  double previous = 1e9;
  for (double delta : {2.0, 4.0, 8.0}) {
    const double m2 = doublon_magic_series({128, 1.0, delta, 0.0, 2}, times).m2[0];
    EXPECT_LT(m2, previous) << "delta=" << delta;
    previous = m2;
  }
}

TEST(ShiftFit, identical_and_offset_series) {
  MagicSeries a{{}, Estimator::coeff, {0, 1, 2, 3}, {0.0, 0.4, 0.9, 1.1}};
  auto b = a;
  auto fit = shift_fit(a, b, {0.0, 3.0});
  EXPECT_DOUBLE_EQ(fit.shift, 0.0);
  EXPECT_DOUBLE_EQ(fit.residual, 0.0);
  EXPECT_EQ(fit.samples, 4u);
  for (auto& v : a.m2) v += 0.7;
  fit = shift_fit(a, b, {1.0, 3.0});
  EXPECT_NEAR(fit.shift, 0.7, 1e-15);
  EXPECT_NEAR(fit.residual, 0.0, 1e-15);
  EXPECT_EQ(fit.samples, 3u);
}

TEST(ShiftFit, errors) {
  MagicSeries a{{}, Estimator::coeff, {0, 1, 2}, {0, 1, 2}};
  MagicSeries b{{}, Estimator::coeff, {0, 1.5, 2}, {0, 1, 2}};
  EXPECT_THROW(shift_fit(a, a, {5.0, 6.0}), InvalidArgument);
  EXPECT_THROW(shift_fit(a, b, {0.0, 2.0}), InvalidArgument);
}

TEST(DefaultLateWindow, stops_before_the_detuned_edge_bonds) {
  const ChainSpec spec{10, 1.0, 8.0, 0.0, 2};
  const auto w = default_late_window(spec);
  // c = 5, nearest reflecting bond 3 hops away, v = 1/16
  EXPECT_DOUBLE_EQ(w.end, 48.0);
  EXPECT_DOUBLE_EQ(w.begin, 32.0);
  EXPECT_TRUE(w.contains(40.0));
  EXPECT_FALSE(w.contains(50.0));
  EXPECT_THROW(default_late_window(ChainSpec{10, 1.0, 0.0, 0.0, 2}), InvalidArgument);
}

TEST(CumulativeDoublonMagic, decreases_with_interaction) {
  // coarse check at a fixed pre-boundary time on the small chain
  std::vector<double> ts;
  for (int n = 0; n <= 80; ++n) ts.push_back(0.1 * n);
  double previous = 1e300;
  for (double delta : {1.0, 2.0, 4.0}) {
    const ChainSpec spec{10, 1.0, delta, 0.0, 2};
    const auto series = doublon_magic_series(spec, ts);
    double acc = 0.0;
    for (std::size_t n = 1; n < ts.size(); ++n) acc += 0.5 * (series.m2[n] + series.m2[n - 1]) * (ts[n] - ts[n - 1]);
    EXPECT_LT(acc, previous);
    previous = acc;
  }
}
