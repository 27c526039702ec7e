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

// Effective doublon model for the easy-axis two-particle walk: a bound
// nearest-neighbour pair hopping on the L-1 bonds with J_eff = J/(2 delta).

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "qwalk/dynamics.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/magic.hpp"
#include "qwalk/model.hpp"
#include "qwalk/parallel.hpp"

namespace qwalk {

struct DoublonParams {
  double j_eff = 0.0;
  double h_eff = 0.0;
  double v_doublon = 0.0;
};

inline DoublonParams doublon_params(double J, double delta) {
  if (!(delta > 0.0)) throw InvalidArgument("doublon parameters need delta > 0");
  DoublonParams p;
  p.j_eff = J / (2.0 * delta);
  p.h_eff = (delta * J + p.j_eff) / 2.0;
  p.v_doublon = p.j_eff;
  return p;
}

/// Effective-model Hamiltonian on the bond lattice. With `include_field` the
/// one-doublon value of h_eff sum_b Z_b, i.e. h_eff (L - 3), sits on the diagonal.
inline HamiltonianMatrix doublon_hamiltonian(const ChainSpec& spec, bool include_field = false) {
  auto h = build_sector_hamiltonian(spec, SectorBasis::doublon(spec.sites));
  if (include_field) {
    const double shift = doublon_params(spec.J, spec.delta).h_eff * (spec.sites - 3);
    h.matrix.diagonal().array() += shift;
  }
  return h;
}

/// M2 of the doublon walker, from the coefficient formula applied to the
/// doublon amplitudes evolved exactly on the (L-1)-bond chain.
inline MagicSeries doublon_magic_series(const ChainSpec& spec, std::span<const double> times,
                                        bool include_field = false, int threads = 1) {
  spec.validate();
  const Propagator propagator(doublon_hamiltonian(spec, include_field));
  const WalkState psi0 = initial_state(spec, SectorBasis::doublon(spec.sites));
  MagicSeries series{spec, Estimator::coeff, {times.begin(), times.end()},
                     std::vector<double>(times.size())};
  parallel_for(times.size(), threads, [&](std::size_t n) {
    series.m2[n] = m2_coeff(propagator.evolve(psi0, times[n]));
  });
  return series;
}

struct TimeWindow {
  double begin = 0.0;
  double end = 0.0;

  bool contains(double t) const { return t >= begin - 1e-12 && t <= end + 1e-12; }
};

/// Last third of the interval before the doublon feels the chain edges.
///
/// The outermost bonds sit next to only one spin, so a doublon there is
/// detuned by roughly Delta*J/2 from the bulk. For Delta >> 1 that detuning
/// dwarfs J_eff and the walker bounces off bond 1 or bond L-3 instead of
/// the true ends. Starting from bond c-1 the nearer of those is
/// min(c-2, L-2-c) hops away, which for even L is (L-4)/2.
inline TimeWindow default_late_window(const ChainSpec& spec) {
  const int c = spec.centre();
  const int hops = std::max(1, std::min(c - 2, spec.sites - 2 - c));
  const double t_end = hops / doublon_params(spec.J, spec.delta).v_doublon;
  return {2.0 * t_end / 3.0, t_end};
}

struct ShiftFit {
  double shift = 0.0;
  double residual = 0.0;
  std::size_t samples = 0;
};

/// Constant offset between two series over a window: shift is the mean of
/// total - doublon, residual the largest deviation from that mean.
inline ShiftFit shift_fit(const MagicSeries& total, const MagicSeries& doublon, TimeWindow window) {
  std::vector<double> diff;
  std::size_t d = 0;
  for (std::size_t n = 0; n < total.times.size(); ++n) {
    const double t = total.times[n];
    if (!window.contains(t)) continue;
    while (d < doublon.times.size() && doublon.times[d] < t - 1e-9) ++d;
    if (d == doublon.times.size() || std::abs(doublon.times[d] - t) > 1e-9)
      throw InvalidArgument("series do not share the time grid at t = " + std::to_string(t));
    diff.push_back(total.m2[n] - doublon.m2[d]);
  }
  if (diff.empty()) throw InvalidArgument("shift window contains no samples");
  ShiftFit fit;
  fit.samples = diff.size();
  for (double x : diff) fit.shift += x;
  fit.shift /= static_cast<double>(diff.size());
  for (double x : diff) fit.residual = std::max(fit.residual, std::abs(x - fit.shift));
  return fit;
}

}  // namespace qwalk
