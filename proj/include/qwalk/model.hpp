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

// Chain specifications, magnon-sector bases, Hamiltonian matrices and the
// localized initial states of the single- and two-particle walks.
//
// Site convention: internal sites 0..L-1, centre c = L/2 (integer division).
// A flipped site is |1>, so <Z> = -1 there and +1 on the background.
// Full-space basis index: bit j set <=> site j flipped.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qwalk/errors.hpp"

namespace qwalk {

inline constexpr int kMaxFullSpaceSites = 14;
inline constexpr std::size_t kMaxDenseDimension = 8192;
inline constexpr int kMaxSingleMagnonSites = 4096;

struct ChainSpec {
  int sites = 8;
  double J = 1.0;
  double delta = 0.0;
  double jprime = 0.0;
  int particles = 1;

  int centre() const { return sites / 2; }

  void validate() const {
    detail::require(sites >= 4, "chain needs at least 4 sites, got " + std::to_string(sites));
    detail::require(std::isfinite(J) && std::isfinite(delta) && std::isfinite(jprime),
                    "couplings must be finite");
    detail::require(delta >= 0.0, "anisotropy must be non-negative");
    detail::require(particles == 1 || particles == 2, "particles must be 1 or 2");
  }
};

enum class SectorKind { single_magnon, two_magnon, doublon, full };

inline const char* to_string(SectorKind kind) {
  switch (kind) {
    case SectorKind::single_magnon: return "single-magnon";
    case SectorKind::two_magnon: return "two-magnon";
    case SectorKind::doublon: return "doublon";
    case SectorKind::full: return "full";
  }
  return "?";
}

/// Enumerates the basis of a conserved sector of an L-site chain.
///
/// single-magnon: state i is the flipped site j = i.
/// two-magnon:    ordered pairs j < k, lexicographic in (j, k).
/// doublon:       bond b in [0, L-2], i.e. the adjacent pair (b, b+1).
/// full:          all 2^L computational basis states.
class SectorBasis {
 public:
  static SectorBasis single_magnon(int sites) { return SectorBasis(SectorKind::single_magnon, sites); }
  static SectorBasis two_magnon(int sites) { return SectorBasis(SectorKind::two_magnon, sites); }
  static SectorBasis doublon(int sites) { return SectorBasis(SectorKind::doublon, sites); }
  static SectorBasis full(int sites) { return SectorBasis(SectorKind::full, sites); }

  SectorKind kind() const { return kind_; }
  int sites() const { return sites_; }
  std::size_t dimension() const { return dimension_; }

  /// Number of flipped spins carried by every state in this basis.
  int magnons() const {
    switch (kind_) {
      case SectorKind::single_magnon: return 1;
      case SectorKind::two_magnon:
      case SectorKind::doublon: return 2;
      case SectorKind::full: return -1;
    }
    return -1;
  }

  std::size_t index_of_pair(int j, int k) const {
    if (j > k) std::swap(j, k);
    detail::require(kind_ == SectorKind::two_magnon, "pair lookup needs a two-magnon basis");
    detail::require(j >= 0 && k < sites_ && j != k, "invalid magnon pair");
    return offsets_[static_cast<std::size_t>(j)] + static_cast<std::size_t>(k - j - 1);
  }

  std::pair<int, int> pair_at(std::size_t i) const {
    detail::require(kind_ == SectorKind::two_magnon, "pair lookup needs a two-magnon basis");
    auto it = std::upper_bound(offsets_.begin(), offsets_.end(), i);
    const int j = static_cast<int>(it - offsets_.begin()) - 1;
    const int k = j + 1 + static_cast<int>(i - offsets_[static_cast<std::size_t>(j)]);
    return {j, k};
  }

  /// Flipped sites of state i (one or two entries; full space not supported).
  std::vector<int> occupied_sites(std::size_t i) const {
    switch (kind_) {
      case SectorKind::single_magnon: return {static_cast<int>(i)};
      case SectorKind::two_magnon: {
        auto [j, k] = pair_at(i);
        return {j, k};
      }
      case SectorKind::doublon: return {static_cast<int>(i), static_cast<int>(i) + 1};
      case SectorKind::full: break;
    }
    std::vector<int> out;
    for (int j = 0; j < sites_; ++j)
      if ((i >> j) & 1U) out.push_back(j);
    return out;
  }

  /// Computational basis index of state i in the 2^L space.
  std::uint64_t full_index(std::size_t i) const {
    detail::require(sites_ <= 63, "full-space index needs L <= 63");
    if (kind_ == SectorKind::full) return i;
    std::uint64_t x = 0;
    for (int j : occupied_sites(i)) x |= std::uint64_t{1} << j;
    return x;
  }

  /// Index of the mirror image of state i under j -> L-1-j.
  std::size_t reflect(std::size_t i) const {
    const int last = sites_ - 1;
    switch (kind_) {
      case SectorKind::single_magnon: return static_cast<std::size_t>(last - static_cast<int>(i));
      case SectorKind::two_magnon: {
        auto [j, k] = pair_at(i);
        return index_of_pair(last - k, last - j);
      }
      case SectorKind::doublon: return static_cast<std::size_t>(sites_ - 2 - static_cast<int>(i));
      case SectorKind::full: {
        std::size_t r = 0;
        for (int j = 0; j < sites_; ++j)
          if ((i >> j) & 1U) r |= std::size_t{1} << (last - j);
        return r;
      }
    }
    return i;
  }

  bool operator==(const SectorBasis& other) const {
    return kind_ == other.kind_ && sites_ == other.sites_;
  }

 private:
  SectorBasis(SectorKind kind, int sites) : kind_(kind), sites_(sites) {
    detail::require(sites >= 2, "a chain needs at least 2 sites");
    switch (kind) {
      case SectorKind::single_magnon: dimension_ = static_cast<std::size_t>(sites); break;
      case SectorKind::doublon: dimension_ = static_cast<std::size_t>(sites - 1); break;
      case SectorKind::two_magnon: {
        offsets_.resize(static_cast<std::size_t>(sites));
        std::size_t acc = 0;
        for (int j = 0; j < sites; ++j) {
          offsets_[static_cast<std::size_t>(j)] = acc;
          acc += static_cast<std::size_t>(sites - j - 1);
        }
        dimension_ = acc;
        break;
      }
      case SectorKind::full:
        if (sites > 30) throw ResourceLimit("full-space basis limited to 30 sites");
        dimension_ = std::size_t{1} << sites;
        break;
    }
  }

  SectorKind kind_;
  int sites_;
  std::size_t dimension_ = 0;
  std::vector<std::size_t> offsets_;
};

/// Real symmetric matrix of a Hamiltonian restricted to `basis`.
struct HamiltonianMatrix {
  SectorBasis basis;
  Eigen::MatrixXd matrix;

  std::size_t dimension() const { return basis.dimension(); }
};

/// Amplitudes of a state in a sector (or full-space) basis at time `time`.
struct WalkState {
  SectorBasis basis;
  double time = 0.0;
  Eigen::VectorXcd amplitudes;

  double norm() const { return amplitudes.norm(); }
};

namespace detail {

inline void check_dense(std::size_t dim) {
  if (dim > kMaxDenseDimension)
    throw ResourceLimit("dense sector dimension " + std::to_string(dim) + " exceeds " +
                        std::to_string(kMaxDenseDimension));
}

// -(delta J / 4) * (aligned bonds - anti-aligned bonds) for a given set of
// flipped sites on an open chain of `sites` sites.
inline double zz_energy(const ChainSpec& spec, int sites, const std::vector<int>& flipped) {
  std::vector<char> occ(static_cast<std::size_t>(sites), 0);
  for (int j : flipped) occ[static_cast<std::size_t>(j)] = 1;
  int anti = 0;
  for (int j : flipped) {
    if (j > 0 && !occ[static_cast<std::size_t>(j - 1)]) ++anti;
    if (j + 1 < sites && !occ[static_cast<std::size_t>(j + 1)]) ++anti;
  }
  const int aligned = (sites - 1) - anti;
  return -0.25 * spec.delta * spec.J * static_cast<double>(aligned - anti);
}

}  // namespace detail

/// Full 2^L x 2^L matrix of
///   H = -(J/4) sum (X_j X_{j+1} + Y_j Y_{j+1}) - (delta J/4) sum Z_j Z_{j+1}
///       - (J'/4) sum (X_j X_{j+2} + Y_j Y_{j+2})
/// with open boundaries.
inline HamiltonianMatrix build_full_hamiltonian(const ChainSpec& spec) {
  const int L = spec.sites;
  if (L > kMaxFullSpaceSites)
    throw ResourceLimit("full-space Hamiltonian limited to " + std::to_string(kMaxFullSpaceSites) +
                        " sites");
  detail::require(L >= 2, "a chain needs at least 2 sites");
  const std::size_t dim = std::size_t{1} << L;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim),
                                            static_cast<Eigen::Index>(dim));
  const double zz = -0.25 * spec.delta * spec.J;
  for (std::size_t x = 0; x < dim; ++x) {
    const auto col = static_cast<Eigen::Index>(x);
    double diag = 0.0;
    for (int j = 0; j + 1 < L; ++j) {
      const bool a = (x >> j) & 1U;
      const bool b = (x >> (j + 1)) & 1U;
      diag += zz * (a == b ? 1.0 : -1.0);
    }
    h(col, col) = diag;
    for (int range = 1; range <= 2; ++range) {
      const double hop = range == 1 ? -0.5 * spec.J : -0.5 * spec.jprime;
      if (hop == 0.0) continue;
      for (int j = 0; j + range < L; ++j) {
        const bool a = (x >> j) & 1U;
        const bool b = (x >> (j + range)) & 1U;
        if (a == b) continue;
        const std::size_t y = x ^ ((std::size_t{1} << j) | (std::size_t{1} << (j + range)));
        h(static_cast<Eigen::Index>(y), col) += hop;
      }
    }
  }
  return {SectorBasis::full(L), std::move(h)};
}

/// Hamiltonian restricted to a magnon-number sector, or the effective
/// nearest-neighbour doublon hopping model on the L-1 bonds.
///
/// The doublon matrix carries only the hop -J_eff/2 with J_eff = J/(2 delta);
/// the uniform effective field is a constant in the one-doublon sector and is
/// left out.
inline HamiltonianMatrix build_sector_hamiltonian(const ChainSpec& spec, const SectorBasis& basis) {
  const int L = spec.sites;
  detail::require(basis.sites() == L, "basis built for " + std::to_string(basis.sites()) +
                                          " sites, chain has " + std::to_string(L));
  if (basis.kind() == SectorKind::full) return build_full_hamiltonian(spec);
  if (basis.kind() == SectorKind::single_magnon && L > kMaxSingleMagnonSites)
    throw ResourceLimit("single-magnon sector limited to " + std::to_string(kMaxSingleMagnonSites) +
                        " sites");
  detail::check_dense(basis.dimension());

  const auto n = static_cast<Eigen::Index>(basis.dimension());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);

  switch (basis.kind()) {
    case SectorKind::single_magnon:
      for (int j = 0; j < L; ++j) {
        h(j, j) = detail::zz_energy(spec, L, {j});
        if (j + 1 < L) h(j, j + 1) = h(j + 1, j) = -0.5 * spec.J;
        if (j + 2 < L) h(j, j + 2) = h(j + 2, j) = -0.5 * spec.jprime;
      }
      break;
    case SectorKind::two_magnon:
      for (Eigen::Index i = 0; i < n; ++i) {
        const auto [j, k] = basis.pair_at(static_cast<std::size_t>(i));
        h(i, i) = detail::zz_energy(spec, L, {j, k});
        // Move one magnon by +1 or +2; the reverse moves fill the transpose.
        for (int which = 0; which < 2; ++which) {
          const int from = which == 0 ? j : k;
          const int other = which == 0 ? k : j;
          for (int range = 1; range <= 2; ++range) {
            const double hop = range == 1 ? -0.5 * spec.J : -0.5 * spec.jprime;
            const int to = from + range;
            if (hop == 0.0 || to >= L || to == other) continue;
            const auto target = static_cast<Eigen::Index>(basis.index_of_pair(to, other));
            h(target, i) = h(i, target) = hop;
          }
        }
      }
      break;
    case SectorKind::doublon: {
      detail::require(spec.delta > 0.0, "doublon model needs delta > 0");
      const double hop = -0.5 * spec.J / (2.0 * spec.delta);
      for (Eigen::Index b = 0; b + 1 < n; ++b) h(b, b + 1) = h(b + 1, b) = hop;
      break;
    }
    case SectorKind::full: break;
  }
  return {basis, std::move(h)};
}

/// Localized initial state: one flip at the centre c, or two flips on
/// (c-1, c). In the doublon basis the doublon sits on bond c-1. Sector bases
/// fix the particle number; the full basis uses spec.particles.
inline WalkState initial_state(const ChainSpec& spec, const SectorBasis& basis) {
  spec.validate();
  detail::require(basis.sites() == spec.sites, "basis does not match the chain length");
  const int c = spec.centre();
  std::size_t index = 0;
  switch (basis.kind()) {
    case SectorKind::single_magnon: index = static_cast<std::size_t>(c); break;
    case SectorKind::two_magnon: index = basis.index_of_pair(c - 1, c); break;
    case SectorKind::doublon: index = static_cast<std::size_t>(c - 1); break;
    case SectorKind::full:
      index = std::size_t{1} << c;
      if (spec.particles == 2) index |= std::size_t{1} << (c - 1);
      break;
  }
  WalkState state{basis, 0.0, Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.dimension()))};
  state.amplitudes(static_cast<Eigen::Index>(index)) = 1.0;
  return state;
}

/// Scatters a sector state into the 2^L computational basis.
inline Eigen::VectorXcd embed_full(const WalkState& state) {
  const int L = state.basis.sites();
  if (L > 24) throw ResourceLimit("full-space embedding limited to 24 sites");
  if (state.basis.kind() == SectorKind::full) return state.amplitudes;
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(Eigen::Index{1} << L);
  for (Eigen::Index i = 0; i < state.amplitudes.size(); ++i)
    out(static_cast<Eigen::Index>(state.basis.full_index(static_cast<std::size_t>(i)))) =
        state.amplitudes(i);
  return out;
}

}  // namespace qwalk
