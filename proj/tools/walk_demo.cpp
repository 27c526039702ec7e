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

// Minimal library tour: walk a single flipped spin on a short XX chain and
// print its magic three ways, then the same for the bound pair at strong
// anisotropy.

#include <cstdio>

#include "qwalk/qwalk.hpp"

int main() {
  using namespace qwalk;

  const ChainSpec chain{10, 1.0, 0.0, 0.0, 1};
  const auto basis = SectorBasis::single_magnon(chain.sites);
  const Propagator walker(build_sector_hamiltonian(chain, basis));
  const auto psi0 = initial_state(chain, basis);

  std::printf("%6s %12s %12s %12s\n", "t", "spectrum", "coeff", "bessel");
  for (double t : {0.0, 0.5, 1.0, 1.5, 2.0}) {
    const auto psi = walker.evolve(psi0, t);
    std::printf("%6.2f %12.8f %12.8f %12.8f\n", t, m2_from_spectrum(pauli_spectrum_full(psi)), m2_coeff(psi),
                m2_bessel(t, chain.J, 600));
  }

  const ChainSpec pair{10, 1.0, 8.0, 0.0, 2};
  const auto pair_basis = SectorBasis::two_magnon(pair.sites);
  const Propagator pair_walker(build_sector_hamiltonian(pair, pair_basis));
  const auto pair0 = initial_state(pair, pair_basis);
  const std::vector<double> times{8.0, 16.0, 32.0};
  const auto doublon = doublon_magic_series(pair, times);
  std::printf("\n%6s %12s %12s\n", "t", "two-magnon", "doublon");
  for (std::size_t n = 0; n < times.size(); ++n)
    std::printf("%6.1f %12.6f %12.6f\n", times[n], m2_from_spectrum(pauli_spectrum_full(pair_walker.evolve(pair0, times[n]))),
                doublon.m2[n]);
}
