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

#include <cmath>
#include <sstream>

#include "mmqed/spectroscopy.hpp"

namespace mmqed {
namespace {

std::vector<double> linspace(double a, double b, double step) {
  std::vector<double> out;
  for (int k = 0; a + k * step <= b + 1e-12; ++k) out.push_back(a + k * step);
  return out;
}

TEST(EigenSweep, UncoupledLevelsAreStraightLines) {
  DeviceParams p;
  p.g_q1f = p.g_q2f = 0.0;
  SweepSpec spec;
  spec.grid = linspace(6.0, 8.0, 0.05);
  const auto t = eigen_sweep(p, spec);
  ASSERT_EQ(t.branch_count(), 5u);
  for (std::size_t k = 0; k < t.grid.size(); ++k) {
    // The probe branch keeps unit weight and follows ν_Q1 exactly.
    bool found = false;
    for (std::size_t b = 0; b < t.branch_count(); ++b) {
      if (t.overlaps[k][b] > 0.5) {
        EXPECT_NEAR(t.eigenvalues[k][b], t.grid[k], 1e-12);
        EXPECT_NEAR(t.overlaps[k][b], 1.0, 1e-12);
        found = true;
      }
    }
    EXPECT_TRUE(found);
  }
}

TEST(EigenSweep, FluxAxisUsesTransmonFrequency) {
  DeviceParams p;
  SweepSpec spec;
  spec.axis = SweepAxis::kFlux;
  spec.grid = {0.0, 0.1, 0.2};
  const auto t = eigen_sweep(p, spec);
  EXPECT_EQ(t.parameter, "flux_q1");
  for (std::size_t k = 0; k < 3; ++k) EXPECT_DOUBLE_EQ(t.swept_frequency[k], transmon_frequency(spec.transmon, spec.grid[k]));
  std::ostringstream csv;
  t.write_csv(csv);
  EXPECT_EQ(csv.str().substr(0, csv.str().find('\n')), "flux_q1,nu_q,E0,E1,E2,E3,E4,w0,w1,w2,w3,w4");
}

TEST(EigenSweep, RejectsUnsortedGrid) {
  SweepSpec spec;
  spec.grid = {7.0, 6.0};
  EXPECT_THROW(eigen_sweep(DeviceParams{}, spec), InvalidArgument);
  spec.grid = {6.0, 7.0};
  spec.qubit = 3;
  EXPECT_THROW(eigen_sweep(DeviceParams{}, spec), InvalidArgument);
}

TEST(AvoidedCrossing, SingleModeVacuumRabiGap) {
  DeviceParams p;
  p.n_modes = 1;
  p.g_q1f = 0.03;
  p.g_q2f = 0.0;  // a single site is shared by both qubits
  SweepSpec spec;
  spec.grid = linspace(p.nu_f - 0.2, p.nu_f + 0.2, 0.001);
  const auto x = find_avoided_crossing(eigen_sweep(p, spec), 1, 2);
  EXPECT_NEAR(x.gap, 2 * p.g_q1f, 1e-6);
  EXPECT_NEAR(x.location, p.nu_f, 1e-3);
}

TEST(AvoidedCrossing, WeakCouplingGapPerMode) {
  DeviceParams p;
  p.g_q1f = 0.004;
  p.g_q2f = 0.0;
  const auto modes = filter_normal_modes(p);
  SweepSpec spec;
  spec.grid = linspace(6.7, 7.6, 0.0005);
  const auto t = eigen_sweep(p, spec);
  for (std::size_t m = 0; m < 3; ++m) {
    const auto x = find_avoided_crossing(t, m + 1, m + 2);
    EXPECT_NEAR(x.gap / (2 * p.g_q1f * modes[m].end_amplitude_q1), 1.0, 0.01) << m;
    EXPECT_NEAR(x.location, modes[m].frequency, 1e-3) << m;
  }
}

TEST(AvoidedCrossing, ReferenceDeviceBandGaps) {
  // Frozen from the 2 MHz sweep with qubit 2 parked at 5 GHz.
  SweepSpec spec;
  spec.grid = linspace(6.6, 7.8, 0.002);
  const auto t = eigen_sweep(DeviceParams::reference_device(), spec);
  const double frozen[3] = {0.11585, 0.15979, 0.11011};
  for (std::size_t b = 1; b <= 3; ++b) EXPECT_NEAR(find_avoided_crossing(t, b, b + 1).gap, frozen[b - 1], 1e-4) << b;
}

TEST(AvoidedCrossing, Preconditions) {
  DeviceParams p;
  SweepSpec spec;
  spec.grid = {6.0, 6.1};
  EXPECT_THROW(find_avoided_crossing(eigen_sweep(p, spec), 1, 2), InvalidArgument);
  // Separation shrinks monotonically toward the right end of this window.
  spec.grid = linspace(6.0, 6.4, 0.05);
  EXPECT_THROW(find_avoided_crossing(eigen_sweep(p, spec), 0, 1), InvalidArgument);
  spec.grid = linspace(6.0, 6.4, 0.05);
  EXPECT_THROW(find_avoided_crossing(eigen_sweep(p, spec), 1, 1), InvalidArgument);
}

TEST(Exchange, ThirdOrderScaling) {
  const DeviceParams p = DeviceParams::reference_device();
  std::vector<double> centers, deltas, j;
  for (double x = 4.0; x <= 8.0 + 1e-12; x += 0.5) centers.push_back(p.nu_f - x * p.g_f);
  const auto rows = exchange_scan(p, centers);
  for (const auto& r : rows) {
    deltas.push_back(r.delta);
    j.push_back(r.j_numeric);
    EXPECT_GT(std::abs(r.j_closed_form / r.j_numeric), 0.5);
    EXPECT_LT(std::abs(r.j_closed_form / r.j_numeric), 2.0);
  }
  EXPECT_NEAR(log_log_slope(deltas, j), -3.0, 0.3);
}

TEST(Exchange, NumericMatchesCrossingSplitting) {
  // 2J from the qubit-qubit anticrossing agrees with the dedicated solver.
  const DeviceParams p = DeviceParams::reference_device();
  SweepSpec spec;
  spec.qubit = 2;
  spec.other_qubit_frequency = 6.4;
  spec.grid = linspace(6.38, 6.42, 0.0005);
  const auto x = find_avoided_crossing(eigen_sweep(p, spec), 0, 1);
  const auto rows = exchange_scan(p, std::vector<double>{6.4});
  EXPECT_NEAR(x.gap / (2 * std::abs(rows[0].j_numeric)), 1.0, 0.02);
}

TEST(LogLogSlope, ExactOnPowerLaw) {
  std::vector<double> x{0.5, 1.0, 2.0, 4.0}, y;
  for (double v : x) y.push_back(-3.7 * std::pow(v, -2.5));
  EXPECT_NEAR(log_log_slope(x, y), -2.5, 1e-12);
  EXPECT_THROW(log_log_slope(std::vector<double>{1.0}, std::vector<double>{1.0}), InvalidArgument);
}

}  // namespace
}  // namespace mmqed
