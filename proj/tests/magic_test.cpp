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

#include "qwalk/magic.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "oracles.hpp"

using namespace qwalk;

namespace {

std::vector<std::complex<double>> to_vector(const Eigen::VectorXcd& v) { return {v.data(), v.data() + v.size()}; }

// Single-magnon amplitudes on an L-site chain as a 2^L state vector.
Eigen::VectorXcd embed_single(const std::vector<std::complex<double>>& psi) {
  WalkState s{SectorBasis::single_magnon(static_cast<int>(psi.size())), 0.0,
              Eigen::Map<const Eigen::VectorXcd>(psi.data(), static_cast<Eigen::Index>(psi.size()))};
  return embed_full(s);
}

}  // namespace

TEST(PauliSpectrum, plus_state) {
  Eigen::VectorXcd psi(2);
  psi << std::sqrt(0.5), std::sqrt(0.5);
  const auto s = pauli_spectrum_full(psi);
  ASSERT_EQ(s.coefficients.size(), 4u);
  EXPECT_NEAR(s.coefficients[0], 1.0, 1e-15);
  EXPECT_NEAR(s.coefficients[1], 1.0, 1e-15);
  EXPECT_NEAR(s.coefficients[2], 0.0, 1e-15);
  EXPECT_NEAR(s.coefficients[3], 0.0, 1e-15);
}

TEST(PauliSpectrum, flipped_first_site) {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
  psi(1) = 1.0;  // site 0 flipped
  const auto f = filter_spectrum(pauli_spectrum_full(psi));
  std::vector<std::string> labels;
  for (auto k : f.indices) labels.push_back(pauli_label(k, 2));
  EXPECT_EQ(labels, (std::vector<std::string>{"II", "ZI", "IZ", "ZZ"}));
  EXPECT_EQ(f.values, (std::vector<double>{1.0, -1.0, 1.0, -1.0}));
}

TEST(PauliSpectrum, transform_matches_direct_expectation_values) {
  std::mt19937_64 rng(11);
  for (int L = 1; L <= 5; ++L) {
    const auto psi = oracle::random_state(1 << L, rng);
    const auto s = pauli_spectrum_full(psi);
    for (std::uint64_t k = 0; k < s.coefficients.size(); ++k)
      ASSERT_NEAR(s.coefficients[k], oracle::pauli_expectation(psi, k, L), 1e-12)
          << pauli_label(k, L);
    EXPECT_NEAR(s.purity(), 1.0, 1e-12);
  }
}

TEST(PauliSpectrum, resource_guard) {
  EXPECT_THROW(pauli_spectrum_full(Eigen::VectorXcd::Zero(1 << 13)), ResourceLimit);
  EXPECT_THROW(pauli_spectrum_full(Eigen::VectorXcd::Zero(6)), InvalidArgument);
}

TEST(PauliSpectrum, filtered_text_round_trip) {
  std::mt19937_64 rng(3);
  const auto f = filter_spectrum(pauli_spectrum_full(oracle::random_state(16, rng)));
  std::stringstream ss;
  write_filtered_spectrum(ss, f);
  const auto back = read_filtered_spectrum(ss);
  EXPECT_EQ(back.sites, 4);
  EXPECT_EQ(back.indices, f.indices);
  EXPECT_EQ(back.values, f.values);

  std::istringstream bad("# sites 2\n5 0.5\nnonsense\n");
  EXPECT_THROW(read_filtered_spectrum(bad), InvalidArgument);
}

TEST(M2Spectrum, stabilizer_basis_states_have_zero_magic) {
  for (int L : {1, 3, 6}) {
    for (int x : {0, 1, (1 << L) - 1}) {
      Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(1 << L);
      psi(x) = 1.0;
      EXPECT_NEAR(m2_from_spectrum(pauli_spectrum_full(psi)), 0.0, 1e-12);
    }
  }
}

TEST(M2Spectrum, t_state) {
  Eigen::VectorXcd psi(2);
  psi << std::sqrt(0.5), std::sqrt(0.5) * std::polar(1.0, std::numbers::pi / 4);
  const auto s = pauli_spectrum_full(psi);
  EXPECT_NEAR(s.coefficients[1], std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(s.coefficients[2], std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(m2_from_spectrum(s), -std::log2(0.75), 1e-12);
}

TEST(M2Coeff, delta_state) {
  std::vector<std::complex<double>> psi(7, 0.0);
  psi[3] = 1.0;
  EXPECT_NEAR(m2_coeff(psi), 0.0, 1e-15);
  EXPECT_NEAR(m2_bruteforce(psi), 0.0, 1e-15);
}

TEST(M2Coeff, two_site_real_state) {
  const std::vector<std::complex<double>> psi{std::sqrt(3.0) / 2, 0.5};
  const double expected = -std::log2(0.8125);
  EXPECT_NEAR(expected, 0.29956, 1e-5);
  EXPECT_NEAR(m2_coeff(psi), expected, 1e-14);
  EXPECT_NEAR(m2_bruteforce(psi), expected, 1e-14);
  EXPECT_NEAR(m2_from_spectrum(pauli_spectrum_full(embed_single(psi))), expected, 1e-12);
}

TEST(M2Coeff, agrees_with_bruteforce_and_spectrum_on_random_states) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> size(3, 8);
  for (int rep = 0; rep < 20; ++rep) {
    const auto psi = to_vector(oracle::random_state(size(rng), rng));
    const double coeff = m2_coeff(psi);
    EXPECT_NEAR(m2_bruteforce(psi), coeff, 1e-10);
    EXPECT_NEAR(m2_from_spectrum(pauli_spectrum_full(embed_single(psi))), coeff, 1e-8);
  }
}

TEST(M2Coeff, permutation_and_phase_invariance) {
  std::mt19937_64 rng(5);
  auto psi = to_vector(oracle::random_state(9, rng));
  const double m2 = m2_coeff(psi);
  std::shuffle(psi.begin(), psi.end(), rng);
  EXPECT_NEAR(m2_coeff(psi), m2, 1e-13);
  for (auto& a : psi) a *= std::polar(1.0, 1.234);
  EXPECT_NEAR(m2_coeff(psi), m2, 1e-13);
}

TEST(M2Coeff, errors) {
  const std::vector<std::complex<double>> unnormalized{1.0, 1.0};
  EXPECT_THROW(m2_coeff(unnormalized), InvalidArgument);
  EXPECT_THROW(m2_bruteforce(std::vector<std::complex<double>>(25, 0.2)), ResourceLimit);
  const ChainSpec spec{6, 1.0, 0.0, 0.0, 2};
  EXPECT_THROW(m2_coeff(initial_state(spec, SectorBasis::two_magnon(6))), InvalidArgument);
}

TEST(M2Coeff, evolved_single_particle_state_matches_spectrum) {
  const ChainSpec spec{10, 1.0, 0.0, 0.0, 1};
  const auto basis = SectorBasis::single_magnon(10);
  const Propagator p(build_sector_hamiltonian(spec, basis));
  const auto psi0 = initial_state(spec, basis);
  for (double t : {0.0, 0.7, 3.0, 11.0}) {
    const auto psi = p.evolve(psi0, t);
    const auto s = pauli_spectrum_full(psi);
    EXPECT_NEAR(s.purity(), 1.0, 1e-8);
    EXPECT_NEAR(m2_from_spectrum(s), m2_coeff(psi), 1e-8);
  }
}

TEST(M2Bessel, zero_at_time_zero) { EXPECT_NEAR(m2_bessel(0.0, 1.0, 100), 0.0, 1e-15); }

TEST(M2Bessel, equals_coefficient_formula_on_bessel_amplitudes) {
  const auto walk = single_particle_amplitudes(5.0, 600);
  EXPECT_NEAR(m2_bessel(5.0, 1.0, 600), m2_coeff(walk.state), 1e-10);
}

TEST(M2Bessel, quadratic_onset) {
  std::vector<double> ratios;
  for (double z : {0.02, 0.01, 0.005}) ratios.push_back(m2_bessel(z, 1.0, 50) / (z * z));
  EXPECT_LT(std::abs(ratios[2] - ratios[1]), std::abs(ratios[1] - ratios[0]));
  EXPECT_NEAR(ratios[2] / ratios[1], 1.0, 1e-3);
  EXPECT_GT(ratios[2], 0.0);
}

TEST(M2Bessel, truncation_error) {
  EXPECT_THROW(m2_bessel(100.0, 1.0, 100), InvalidArgument);
  EXPECT_NO_THROW(m2_bessel(100.0, 1.0, 600));
}

TEST(M2Asymptotic, value_at_vt_100) {
  const double z = 100.0;
  const double lt = std::log(z) + 5 * std::log(2.0) + 0.5772156649;
  const double ref = -std::log2(7.0 / (std::pow(M_PI, 4) * z * z) * lt * lt);
  EXPECT_NEAR(ref, 10.86, 5e-3);
  EXPECT_NEAR(m2_asymptotic(100.0, 1.0), ref, 1e-9);
  EXPECT_NEAR(m2_asymptotic(50.0, 2.0), ref, 1e-12);
}

TEST(M2Asymptotic, domain) {
  EXPECT_THROW(m2_asymptotic(1.0, 1.0), InvalidArgument);
  EXPECT_THROW(m2_asymptotic(0.5, 1.0), InvalidArgument);
}

TEST(M2Asymptotic, approaches_exact_curve) {
  // the gap oscillates on fine grids, so compare octaves
  double previous = 1e9;
  for (double z : {25.0, 50.0, 100.0, 200.0}) {
    const double gap = std::abs(m2_asymptotic(z, 1.0) - m2_bessel(z, 1.0, 600));
    EXPECT_LT(gap, previous) << "vt=" << z;
    previous = gap;
  }
}

TEST(M2Asymptotic, logarithmic_leading_growth) {
  std::vector<double> excess;
  for (double z : {16.0, 32.0, 64.0, 128.0, 256.0, 512.0}) excess.push_back(m2_asymptotic(z, 1.0) - 2.0 * std::log2(z));
  for (std::size_t i = 2; i < excess.size(); ++i)
    EXPECT_LT(std::abs(excess[i] - excess[i - 1]), std::abs(excess[i - 1] - excess[i - 2]));
}
