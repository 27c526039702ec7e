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

// Stabilizer Renyi entropy M2 by four routes:
//  - the full Pauli spectrum of a 2^L state (any state, small L),
//  - the O(L) coefficient formula for one-particle amplitudes,
//  - the literal quadruple sum over site indices (test oracle),
//  - the Bessel closed form of the infinite-chain walk and its asymptote.
//
// Normalization: M2 = -log2(2^-L sum_P c_P^4), zero on stabilizer states.
// Pauli string index: base 4, site 0 least significant, I=0 X=1 Y=2 Z=3.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "qwalk/dynamics.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/model.hpp"

namespace qwalk {

inline constexpr int kMaxSpectrumSites = 12;
inline constexpr double kZeroThreshold = 1e-10;

struct PauliSpectrum {
  int sites = 0;
  std::vector<double> coefficients;

  /// sum_P c_P^2 / 2^L, equal to 1 for a normalized pure state.
  double purity() const {
    double sum = 0.0;
    for (double c : coefficients) sum += c * c;
    return std::ldexp(sum, -sites);
  }
};

/// Pauli strings with |c_P| > tau, in increasing string index.
struct FilteredSpectrum {
  int sites = 0;
  std::vector<std::uint64_t> indices;
  std::vector<double> values;
};

enum class Estimator { spectrum, coeff, bruteforce, bessel, asymptotic };

inline const char* to_string(Estimator e) {
  switch (e) {
    case Estimator::spectrum: return "spectrum";
    case Estimator::coeff: return "coeff";
    case Estimator::bruteforce: return "bruteforce";
    case Estimator::bessel: return "bessel";
    case Estimator::asymptotic: return "asymptotic";
  }
  return "?";
}

struct MagicSeries {
  ChainSpec chain;
  Estimator estimator = Estimator::coeff;
  std::vector<double> times;
  std::vector<double> m2;
};

/// "IXYZ" label of a Pauli string, site 0 first.
inline std::string pauli_label(std::uint64_t index, int sites) {
  std::string s(static_cast<std::size_t>(sites), 'I');
  for (int j = 0; j < sites; ++j, index >>= 2) s[static_cast<std::size_t>(j)] = "IXYZ"[index & 3U];
  return s;
}

namespace detail {

// -log2 of the fourth-moment average, written so that a stabilizer state
// prints as 0 rather than -0.
inline double magic_bits(double moment) { return 0.0 - std::log2(moment); }

// Moves bit j of x to bit 2j.
inline std::uint64_t spread_bits(std::uint64_t x) {
  std::uint64_t out = 0;
  for (int j = 0; x != 0; ++j, x >>= 1) out |= (x & 1U) << (2 * j);
  return out;
}

}  // namespace detail

/// All 4^L coefficients c_P = <psi|P|psi> of a full-space state vector.
///
/// The density matrix is laid out with per-site digit 2 x_j + y_j for the
/// element <x|rho|y>; one sweep per site maps (rho00, rho01, rho10, rho11)
/// to (Tr I rho, Tr X rho, Tr Y rho, Tr Z rho) in place. Cost O(L 4^L).
inline PauliSpectrum pauli_spectrum_full(const Eigen::VectorXcd& psi) {
  const auto dim = static_cast<std::uint64_t>(psi.size());
  int sites = 0;
  while ((std::uint64_t{1} << sites) < dim) ++sites;
  detail::require(dim >= 2 && (std::uint64_t{1} << sites) == dim,
                  "state length must be a power of two");
  if (sites > kMaxSpectrumSites)
    throw ResourceLimit("Pauli spectrum limited to " + std::to_string(kMaxSpectrumSites) + " sites");

  const std::uint64_t size = std::uint64_t{1} << (2 * sites);
  std::vector<std::complex<double>> rho(size);

  std::vector<std::pair<std::uint64_t, std::complex<double>>> support;
  for (std::uint64_t x = 0; x < dim; ++x)
    if (psi(static_cast<Eigen::Index>(x)) != 0.0) support.emplace_back(detail::spread_bits(x), psi(static_cast<Eigen::Index>(x)));
  for (const auto& [sx, ax] : support)
    for (const auto& [sy, ay] : support) rho[(sx << 1) | sy] = ax * std::conj(ay);

  const std::complex<double> i_unit(0.0, 1.0);
  for (int j = 0; j < sites; ++j) {
    const std::uint64_t stride = std::uint64_t{1} << (2 * j);
    const std::uint64_t block = stride * 4;
    for (std::uint64_t base = 0; base < size; base += block) {
      for (std::uint64_t off = 0; off < stride; ++off) {
        auto* p = &rho[base + off];
        const auto r00 = p[0], r01 = p[stride], r10 = p[2 * stride], r11 = p[3 * stride];
        p[0] = r00 + r11;
        p[stride] = r01 + r10;
        p[2 * stride] = i_unit * (r01 - r10);
        p[3 * stride] = r00 - r11;
      }
    }
  }

  PauliSpectrum out{sites, std::vector<double>(size)};
  for (std::uint64_t k = 0; k < size; ++k) {
    if (std::abs(rho[k].imag()) >= kZeroThreshold)
      throw NumericalFailure("Pauli coefficient " + pauli_label(k, sites) +
                             " has imaginary part " + std::to_string(rho[k].imag()));
    out.coefficients[k] = rho[k].real();
  }
  return out;
}

inline PauliSpectrum pauli_spectrum_full(const WalkState& state) {
  if (state.basis.sites() > kMaxSpectrumSites)
    throw ResourceLimit("Pauli spectrum limited to " + std::to_string(kMaxSpectrumSites) + " sites");
  return pauli_spectrum_full(embed_full(state));
}

inline FilteredSpectrum filter_spectrum(const PauliSpectrum& spectrum, double tau = kZeroThreshold) {
  FilteredSpectrum out{spectrum.sites, {}, {}};
  for (std::size_t k = 0; k < spectrum.coefficients.size(); ++k) {
    if (std::abs(spectrum.coefficients[k]) > tau) {
      out.indices.push_back(k);
      out.values.push_back(spectrum.coefficients[k]);
    }
  }
  return out;
}

/// Two-column text: string index and coefficient (17 significant digits).
/// A leading "# sites L" comment records the chain length.
inline void write_filtered_spectrum(std::ostream& os, const FilteredSpectrum& spectrum) {
  os << "# sites " << spectrum.sites << '\n';
  char buf[64];
  for (std::size_t n = 0; n < spectrum.values.size(); ++n) {
    std::snprintf(buf, sizeof buf, "%.17g", spectrum.values[n]);
    os << spectrum.indices[n] << ' ' << buf << '\n';
  }
}

inline FilteredSpectrum read_filtered_spectrum(std::istream& is) {
  FilteredSpectrum out;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    if (line[0] == '#') {
      std::string tag;
      ls.ignore(1);
      if (ls >> tag && tag == "sites") ls >> out.sites;
      continue;
    }
    std::uint64_t index = 0;
    double value = 0.0;
    if (!(ls >> index >> value))
      throw InvalidArgument("malformed spectrum line " + std::to_string(lineno));
    out.indices.push_back(index);
    out.values.push_back(value);
  }
  return out;
}

inline double m2_from_spectrum(const PauliSpectrum& spectrum) {
  double sum = 0.0;
  for (double c : spectrum.coefficients) {
    const double c2 = c * c;
    sum += c2 * c2;
  }
  return detail::magic_bits(std::ldexp(sum, -spectrum.sites));
}

namespace detail {

inline void require_normalized(std::span<const std::complex<double>> psi) {
  double n2 = 0.0;
  for (const auto& a : psi) n2 += std::norm(a);
  if (std::abs(std::sqrt(n2) - 1.0) > 1e-6)
    throw InvalidArgument("amplitudes are not normalized (norm " + std::to_string(std::sqrt(n2)) + ")");
}

inline std::span<const std::complex<double>> as_span(const Eigen::VectorXcd& v) {
  return {v.data(), static_cast<std::size_t>(v.size())};
}

}  // namespace detail

/// M2 of a one-particle state from its site amplitudes:
///   2^-M2 = -6 sum|psi|^8 + 6 (sum|psi|^4)^2 + |sum psi^4|^2.
inline double m2_coeff(std::span<const std::complex<double>> psi) {
  detail::require_normalized(psi);
  double s8 = 0.0, s4 = 0.0;
  std::complex<double> q{};
  for (const auto& a : psi) {
    const double p = std::norm(a);
    s4 += p * p;
    s8 += p * p * p * p;
    const auto a2 = a * a;
    q += a2 * a2;
  }
  return detail::magic_bits(-6.0 * s8 + 6.0 * s4 * s4 + std::norm(q));
}

/// Accepts single-magnon and doublon states (one walker on a line).
inline double m2_coeff(const WalkState& state) {
  detail::require(state.basis.kind() == SectorKind::single_magnon ||
                      state.basis.kind() == SectorKind::doublon,
                  "coefficient formula needs a single-walker state");
  return m2_coeff(detail::as_span(state.amplitudes));
}

/// Literal O(L^4) contraction
///   sum_{jklm} psi_j psi_k psi_l psi*_m psi_[jkl] psi*_[jkm] psi*_[jlm] psi*_[klm]
/// with psi_[jkl] = psi_j d_kl + psi_k d_jl + psi_l d_jk - 2 psi_j d_jk d_jl.
inline double m2_bruteforce(std::span<const std::complex<double>> psi) {
  const auto n = psi.size();
  if (n > 24) throw ResourceLimit("brute-force M2 limited to 24 sites");
  detail::require_normalized(psi);
  auto bracket = [&](std::size_t j, std::size_t k, std::size_t l) {
    std::complex<double> v{};
    if (k == l) v += psi[j];
    if (j == l) v += psi[k];
    if (j == k) v += psi[l];
    if (j == k && j == l) v -= 2.0 * psi[j];
    return v;
  };
  std::complex<double> sum{};
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t l = 0; l < n; ++l) {
        const auto bjkl = bracket(j, k, l);
        if (bjkl == 0.0) continue;
        const auto head = psi[j] * psi[k] * psi[l] * bjkl;
        for (std::size_t m = 0; m < n; ++m)
          sum += head * std::conj(psi[m] * bracket(j, k, m) * bracket(j, l, m) * bracket(k, l, m));
      }
  return detail::magic_bits(sum.real());
}

/// M2 = -log2 sum_{j,k} (7 - 6 d_jk) J_j^4(vt) J_k^4(vt), j,k in [-L/2, L/2].
inline double m2_bessel(double t, double velocity, int sum_sites) {
  detail::require(t >= 0.0, "time must be non-negative");
  detail::require(sum_sites >= 2, "summation range needs at least 2 sites");
  const double z = velocity * t;
  detail::require(z >= 0.0, "velocity must be non-negative");
  const int half = sum_sites / 2;
  const int order = std::max(half, static_cast<int>(std::ceil(z + 12.0 * std::cbrt(z) + 40.0)));
  const auto bessel = bessel_j_array(order, z);
  double tail = 0.0;
  for (int n = half + 1; n <= order; ++n) tail += 2.0 * bessel[static_cast<std::size_t>(n)] * bessel[static_cast<std::size_t>(n)];
  if (tail >= 1e-12)
  {
    char msg[128];
    std::snprintf(msg, sizeof msg, "Bessel sum truncated: tail mass %.3g beyond |j| = %d; raise L", tail, half);
    throw InvalidArgument(msg);
  }
  double s4 = 0.0, s8 = 0.0;
  for (int n = 0; n <= half; ++n) {
    const double b2 = bessel[static_cast<std::size_t>(n)] * bessel[static_cast<std::size_t>(n)];
    const double w = n == 0 ? 1.0 : 2.0;
    s4 += w * b2 * b2;
    s8 += w * b2 * b2 * b2 * b2;
  }
  return detail::magic_bits(7.0 * s4 * s4 - 6.0 * s8);
}

/// Large-vt asymptote -log2[7 / (pi^4 (vt)^2) (ln vt + 5 ln 2 + gamma)^2].
inline double m2_asymptotic(double t, double velocity) {
  const double z = velocity * t;
  if (!(z > 1.0)) throw InvalidArgument("asymptotic M2 needs v t > 1");
  const double pi2 = std::numbers::pi * std::numbers::pi;
  const double log_term = std::log(z) + 5.0 * std::numbers::ln2 + std::numbers::egamma;
  return detail::magic_bits(7.0 / (pi2 * pi2 * z * z) * log_term * log_term);
}

}  // namespace qwalk
