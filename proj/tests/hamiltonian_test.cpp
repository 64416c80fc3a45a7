// Copyright 2026 The mmqed Authors
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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "mmqed/couplings.hpp"
#include "mmqed/hamiltonian.hpp"

namespace mmqed {
namespace {

TEST(FilterModes, TightBindingChain) {
  for (int n : {1, 2, 3, 5}) {
    DeviceParams p;
    p.n_modes = n;
    const auto modes = filter_normal_modes(p);
    ASSERT_EQ(modes.size(), static_cast<std::size_t>(n));
    std::vector<double> expected;
    for (int k = 1; k <= n; ++k) expected.push_back(p.nu_f + 2 * p.g_f * std::cos(k * std::numbers::pi / (n + 1)));
    std::sort(expected.begin(), expected.end());
    for (int k = 0; k < n; ++k) EXPECT_NEAR(modes[k].frequency, expected[k], 1e-12);
    for (const auto& m : modes) {
      EXPECT_NEAR(m.site_amplitudes.norm(), 1.0, 1e-12);
      EXPECT_GE(m.site_amplitudes(0), 0.0);
    }
  }
}

TEST(FilterModes, ReferenceDeviceCouplings) {
  const auto modes = filter_normal_modes(DeviceParams::reference_device());
  // Middle mode of a three-site chain has amplitudes (1, 0, −1)/√2.
  EXPECT_NEAR(modes[1].g_q1, 0.135 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(modes[1].g_q2, 0.144 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(modes[0].end_amplitude_q1, 0.5, 1e-12);
}

TEST(Hamiltonian, HermitianAndConservesExcitations) {
  DeviceParams p;
  p.qubit_levels = 3;
  const HamiltonianModel m(p);
  const ComplexMatrix h = m(6.3, 5.4);
  EXPECT_EQ(hermiticity_defect(h), 0.0);
  const ComplexMatrix n = m.excitation_number();
  EXPECT_EQ((h * n - n * h).norm(), 0.0);
}

TEST(Hamiltonian, SectorBlockEqualsFullSubmatrix) {
  DeviceParams p;
  const HamiltonianModel full(p), sector(p, 2);
  const ComplexMatrix hf = full(6.1, 5.2), hs = sector(6.1, 5.2);
  const Basis& bf = *full.basis();
  const Basis& bs = *sector.basis();
  for (std::size_t i = 0; i < bs.size(); ++i) {
    for (std::size_t j = 0; j < bs.size(); ++j) {
      const auto fi = static_cast<Eigen::Index>(bf.index_of(bs.label(i)));
      const auto fj = static_cast<Eigen::Index>(bf.index_of(bs.label(j)));
      EXPECT_EQ(hs(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)), hf(fi, fj));
    }
  }
}

TEST(Hamiltonian, SecondLevelCouplingCarriesSqrtTwo) {
  DeviceParams p;
  p.qubit_levels = 3;
  const HamiltonianModel m(p, 2);
  const Basis& b = *m.basis();
  const ComplexMatrix h = m(6.0, 5.0);
  OccupationLabel two = b.qubit_label(2, 0);
  OccupationLabel one = b.qubit_label(1, 0);
  one.photons[0] = 1;
  const auto i = static_cast<Eigen::Index>(b.index_of(two)), j = static_cast<Eigen::Index>(b.index_of(one));
  EXPECT_NEAR(h(i, j).real(), p.g_q1f * std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(h(i, i).real(), 2 * 6.0 + p.anharmonicity[0], 1e-12);
}

TEST(Hamiltonian, DiagonalIsBareEnergy) {
  DeviceParams p;
  const HamiltonianModel m(p, 1);
  const ComplexMatrix h = m(6.25, 5.5);
  const Basis& b = *m.basis();
  EXPECT_EQ(h(static_cast<Eigen::Index>(b.index_of(b.qubit_label(1, 0))), static_cast<Eigen::Index>(b.index_of(b.qubit_label(1, 0)))), Complex(6.25, 0));
  EXPECT_EQ(h(static_cast<Eigen::Index>(b.index_of(b.qubit_label(0, 1))), static_cast<Eigen::Index>(b.index_of(b.qubit_label(0, 1)))), Complex(5.5, 0));
}

TEST(Hamiltonian, DimensionLimitEnforced) {
  DeviceParams p;
  p.n_modes = 6;
  p.excitation_cap = 6;
  p.photon_cutoff = 6;
  p.max_dimension = 500;
  EXPECT_THROW(HamiltonianModel{p}, InvalidArgument);
  DeviceParams bad;
  bad.qubit_levels = 4;
  EXPECT_THROW(bad.validate(), InvalidArgument);
}

TEST(Dress, AssignsEveryLabelOnce) {
  DeviceParams p;
  const HamiltonianModel m(p);
  const auto d = dress(m(6.2, 5.3));
  std::vector<std::size_t> cols = d.eigen_index;
  std::sort(cols.begin(), cols.end());
  for (std::size_t k = 0; k < cols.size(); ++k) EXPECT_EQ(cols[k], k);
  const ComplexMatrix u = d.dressing();
  EXPECT_NEAR((u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())).norm(), 0.0, 1e-10);
  const std::size_t gg = m.basis()->index_of(m.basis()->qubit_label(0, 0));
  EXPECT_EQ(d.energy(gg), 0.0);
}

TEST(Couplings, SingleModeExchangeMatchesSecondOrder) {
  DeviceParams p;
  p.n_modes = 1;
  p.g_q1f = p.g_q2f = 0.05;
  for (double delta : {-1.0, -0.6}) {
    const double j = numeric_j(p, p.nu_f + delta);
    EXPECT_NEAR(j / (p.g_q1f * p.g_q2f / std::abs(delta)), 1.0, 0.05) << delta;
  }
}

TEST(Couplings, ClosedFormPowerLaw) {
  DeviceParams p = DeviceParams::reference_device();
  const double a = approx_j(p, -0.5), b = approx_j(p, -1.0);
  EXPECT_NEAR(std::log(std::abs(b / a)) / std::log(2.0), -3.0, 1e-12);
  EXPECT_THROW(approx_j(p, 0.0), InvalidArgument);
  EXPECT_NEAR(mean_detuning(p, 6.0, 6.2), 6.1 - p.nu_f, 1e-12);
}

TEST(Couplings, ZzFlipsSignAcrossTheMode) {
  DeviceParams p;
  p.n_modes = 1;
  p.g_q1f = p.g_q2f = 0.04;
  p.excitation_cap = 2;
  const double below = numeric_xi(p, p.nu_f - 0.8, p.nu_f - 0.9);
  const double above = numeric_xi(p, p.nu_f + 0.8, p.nu_f + 0.9);
  EXPECT_LT(below * above, 0.0);
  EXPECT_NEAR(above / -below, 1.0, 0.1);
}

TEST(Couplings, ZzVanishesWithoutCoupling) {
  DeviceParams p;
  p.g_q2f = 0.0;
  EXPECT_NEAR(numeric_xi(p, 6.4, 6.35), 0.0, 1e-12);
}

}  // namespace
}  // namespace mmqed
