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

// Exact time evolution: Bessel closed form for the infinite-chain single
// walker, and a cached eigendecomposition propagator for any sector matrix.

#include <lapacke.h>

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "qwalk/errors.hpp"
#include "qwalk/model.hpp"

namespace qwalk {

/// J_0(z) .. J_{order_max}(z) by Miller's downward recurrence, normalized
/// with J_0 + 2 sum_k J_{2k} = 1.
inline std::vector<double> bessel_j_array(int order_max, double z) {
  detail::require(order_max >= 0, "bessel order must be non-negative");
  if (!(z >= 0.0)) throw InvalidArgument("bessel argument must be >= 0");
  std::vector<double> out(static_cast<std::size_t>(order_max) + 1, 0.0);
  if (z == 0.0) {
    out[0] = 1.0;
    return out;
  }
  const int start = std::max(static_cast<int>(std::ceil(z + 12.0 * std::cbrt(z) + 40.0)),
                             order_max + 30);
  constexpr double kBig = 1e250;
  constexpr double kRescale = 1e-250;
  double next = 0.0;     // J_{n+1}
  double current = 1e-300;  // J_n, arbitrary seed
  double even_sum = 0.0;
  for (int n = start; n >= 0; --n) {
    if (n <= order_max) out[static_cast<std::size_t>(n)] = current;
    if (n % 2 == 0) even_sum += (n == 0 ? 1.0 : 2.0) * current;
    if (n == 0) break;
    const double previous = (2.0 * n / z) * current - next;
    next = current;
    current = previous;
    if (std::abs(current) > kBig) {
      current *= kRescale;
      next *= kRescale;
      even_sum *= kRescale;
      for (int m = n; m <= order_max; ++m) out[static_cast<std::size_t>(m)] *= kRescale;
    }
  }
  for (double& v : out) v /= even_sum;
  return out;
}

/// Bessel closed form of the single-walker state on an L-site chain.
struct BesselWalk {
  WalkState state;
  /// sum of J_k^2 over |k| > L/2 - 2
  double tail_mass = 0.0;
  /// Set when the tail mass exceeds kBoundaryTailThreshold: the infinite-chain
  /// form no longer describes the open finite chain.
  bool boundary_warning = false;
};

inline constexpr double kBoundaryTailThreshold = 1e-10;

/// psi_k(t) = i^k J_k(v t) at offset k from the centre site. This is the
/// exact solution for the hop amplitude -v/2 (i.e. H = -(J/4)(XX+YY), v = J).
inline BesselWalk single_particle_amplitudes(double t, int sites, double velocity = 1.0) {
  detail::require(t >= 0.0, "time must be non-negative");
  detail::require(sites >= 2, "a chain needs at least 2 sites");
  const double z = velocity * t;
  detail::require(z >= 0.0, "velocity must be non-negative");
  const int order = std::max(sites, static_cast<int>(std::ceil(z + 12.0 * std::cbrt(z) + 40.0)));
  const auto bessel = bessel_j_array(order, z);

  const int c = sites / 2;
  BesselWalk walk{WalkState{SectorBasis::single_magnon(sites), t,
                            Eigen::VectorXcd::Zero(sites)},
                  0.0, false};
  static const std::complex<double> kPowI[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (int j = 0; j < sites; ++j) {
    const int k = j - c;
    const int n = std::abs(k);
    double value = bessel[static_cast<std::size_t>(n)];
    if (k < 0 && (n % 2 == 1)) value = -value;
    walk.state.amplitudes(j) = kPowI[((k % 4) + 4) % 4] * value;
  }
  const double edge = sites / 2.0 - 2.0;
  for (int n = 1; n <= order; ++n)
    if (n > edge) walk.tail_mass += 2.0 * bessel[static_cast<std::size_t>(n)] * bessel[static_cast<std::size_t>(n)];
  walk.boundary_warning = walk.tail_mass > kBoundaryTailThreshold;
  return walk;
}

namespace detail {

// Eigen-decomposition of a real symmetric matrix in place: on return `a`
// holds the eigenvectors column-wise.
inline Eigen::VectorXd symmetric_eigensolve(Eigen::MatrixXd& a) {
  const auto n = static_cast<lapack_int>(a.rows());
  Eigen::VectorXd w(a.rows());
  if (n == 0) return w;
  const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'U', n, a.data(), n, w.data());
  if (info != 0)
    throw NumericalFailure("dsyevd failed with info = " + std::to_string(info));
  return w;
}

}  // namespace detail

/// Cached eigendecomposition H = V diag(E) V^T used for exact evolution at
/// arbitrary times.
///
/// When H commutes with the chain reflection j -> L-1-j the even and odd
/// parity blocks are diagonalized separately; the stored V is still the
/// full orthogonal matrix in the original basis.
class Propagator {
 public:
  explicit Propagator(const HamiltonianMatrix& h, bool use_reflection = true) : basis_(h.basis) {
    const auto n = h.matrix.rows();
    detail::require(h.matrix.cols() == n && static_cast<std::size_t>(n) == basis_.dimension(),
                    "Hamiltonian shape does not match its basis");
    if (use_reflection && commutes_with_reflection(h)) {
      build_from_parity_blocks(h);
      reflection_blocks_ = true;
    } else {
      vectors_ = h.matrix;
      energies_ = detail::symmetric_eigensolve(vectors_);
    }
  }

  const SectorBasis& basis() const { return basis_; }
  const Eigen::VectorXd& energies() const { return energies_; }
  const Eigen::MatrixXd& eigenvectors() const { return vectors_; }
  bool used_reflection_blocks() const { return reflection_blocks_; }

  /// V exp(-i E t) V^T psi0; the returned time is psi0.time + t.
  WalkState evolve(const WalkState& psi0, double t) const {
    if (!(psi0.basis == basis_))
      throw InvalidArgument(std::string("state basis (") + to_string(psi0.basis.kind()) +
                            ") does not match propagator basis (" + to_string(basis_.kind()) + ")");
    const Eigen::VectorXd re = vectors_.transpose() * psi0.amplitudes.real();
    const Eigen::VectorXd im = vectors_.transpose() * psi0.amplitudes.imag();
    Eigen::VectorXd rot_re(re.size()), rot_im(re.size());
    for (Eigen::Index n = 0; n < re.size(); ++n) {
      const double phase = -energies_(n) * t;
      const double c = std::cos(phase), s = std::sin(phase);
      rot_re(n) = c * re(n) - s * im(n);
      rot_im(n) = s * re(n) + c * im(n);
    }
    WalkState out{basis_, psi0.time + t, Eigen::VectorXcd(re.size())};
    out.amplitudes.real() = vectors_ * rot_re;
    out.amplitudes.imag() = vectors_ * rot_im;
    return out;
  }

 private:
  bool commutes_with_reflection(const HamiltonianMatrix& h) const {
    const auto n = h.matrix.rows();
    const double scale = std::max(1.0, h.matrix.cwiseAbs().maxCoeff());
    std::vector<Eigen::Index> mirror(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i)
      mirror[static_cast<std::size_t>(i)] =
          static_cast<Eigen::Index>(basis_.reflect(static_cast<std::size_t>(i)));
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto rj = mirror[static_cast<std::size_t>(j)];
      for (Eigen::Index i = 0; i < n; ++i)
        if (std::abs(h.matrix(mirror[static_cast<std::size_t>(i)], rj) - h.matrix(i, j)) >
            1e-13 * scale)
          return false;
    }
    return true;
  }

  struct ParityVector {
    Eigen::Index first;
    Eigen::Index second;  // -1 for a reflection-invariant basis state
    double weight_second;
  };

  void build_from_parity_blocks(const HamiltonianMatrix& h) {
    const auto n = h.matrix.rows();
    const double s = std::sqrt(0.5);
    std::vector<ParityVector> even, odd;
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto r = static_cast<Eigen::Index>(basis_.reflect(static_cast<std::size_t>(i)));
      if (r == i) even.push_back({i, -1, 0.0});
      else if (r > i) {
        even.push_back({i, r, 1.0});
        odd.push_back({i, r, -1.0});
      }
    }
    vectors_ = Eigen::MatrixXd::Zero(n, n);
    energies_.resize(n);
    Eigen::Index column = 0;
    for (const auto* block : {&even, &odd}) {
      const auto m = static_cast<Eigen::Index>(block->size());
      if (m == 0) continue;
      auto entries = [&](const ParityVector& p) {
        std::array<std::pair<Eigen::Index, double>, 2> e{};
        if (p.second < 0) {
          e[0] = {p.first, 1.0};
          e[1] = {-1, 0.0};
        } else {
          e[0] = {p.first, s};
          e[1] = {p.second, s * p.weight_second};
        }
        return e;
      };
      Eigen::MatrixXd hb(m, m);
      for (Eigen::Index b = 0; b < m; ++b) {
        const auto eb = entries((*block)[static_cast<std::size_t>(b)]);
        for (Eigen::Index a = 0; a < m; ++a) {
          const auto ea = entries((*block)[static_cast<std::size_t>(a)]);
          double sum = 0.0;
          for (const auto& [i, wi] : ea) {
            if (i < 0) continue;
            for (const auto& [j, wj] : eb)
              if (j >= 0) sum += wi * wj * h.matrix(i, j);
          }
          hb(a, b) = sum;
        }
      }
      const Eigen::VectorXd w = detail::symmetric_eigensolve(hb);
      for (Eigen::Index a = 0; a < m; ++a) {
        for (const auto& [i, wi] : entries((*block)[static_cast<std::size_t>(a)]))
          if (i >= 0) vectors_.row(i).segment(column, m) += wi * hb.row(a);
      }
      energies_.segment(column, m) = w;
      column += m;
    }
  }

  SectorBasis basis_;
  Eigen::VectorXd energies_;
  Eigen::MatrixXd vectors_;
  bool reflection_blocks_ = false;
};

inline double energy_expectation(const HamiltonianMatrix& h, const WalkState& state) {
  detail::require(h.basis == state.basis, "state and Hamiltonian bases differ");
  const Eigen::VectorXd re = state.amplitudes.real();
  const Eigen::VectorXd im = state.amplitudes.imag();
  return re.dot(h.matrix * re) + im.dot(h.matrix * im);
}

/// <Z_j> for every site j, with the unflipped background at +1.
inline std::vector<double> magnetization_profile(const WalkState& state) {
  const int L = state.basis.sites();
  std::vector<double> z(static_cast<std::size_t>(L), 1.0);
  const auto& a = state.amplitudes;
  if (state.basis.kind() == SectorKind::full) {
    for (Eigen::Index x = 0; x < a.size(); ++x) {
      const double p = std::norm(a(x));
      if (p == 0.0) continue;
      for (int j = 0; j < L; ++j)
        if ((static_cast<std::size_t>(x) >> j) & 1U) z[static_cast<std::size_t>(j)] -= 2.0 * p;
    }
    return z;
  }
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const double p = std::norm(a(i));
    for (int j : state.basis.occupied_sites(static_cast<std::size_t>(i)))
      z[static_cast<std::size_t>(j)] -= 2.0 * p;
  }
  return z;
}

}  // namespace qwalk
