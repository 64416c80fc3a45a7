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

#include "mmqed/transmon.hpp"

namespace mmqed {
namespace {

TEST(Transmon, DeepTransmonAsymptote) {
  TransmonParams p;
  p.e_c = 0.2;
  p.e_j_max = 60.0;  // E_J/E_C = 300
  const RealVector levels = transmon_levels(p, p.e_j_max, 3);
  const double nu01 = std::sqrt(8 * p.e_j_max * p.e_c) - p.e_c;
  EXPECT_NEAR(levels(1) / nu01, 1.0, 1e-3);
  EXPECT_NEAR(transmon_anharmonicity(p, 0.0) / -p.e_c, 1.0, 0.1);
}

TEST(Transmon, ChargeRegimeAtHalfIntegerOffset) {
  // With E_J ≪ E_C and n_g = 1/2 the two lowest charge states split by E_J.
  TransmonParams p;
  p.e_c = 5.0;
  p.e_j_max = 0.1;
  p.n_g = 0.5;
  EXPECT_NEAR(transmon_frequency(p, 0.0), 0.1, 1e-3);
}

TEST(Transmon, FrequencyFallsWithFlux) {
  TransmonParams p;
  double prev = transmon_frequency(p, 0.0);
  for (double phi = 0.05; phi < 0.5; phi += 0.05) {
    const double nu = transmon_frequency(p, phi);
    EXPECT_LT(nu, prev) << phi;
    prev = nu;
  }
  EXPECT_DOUBLE_EQ(flux_to_ej(p, 0.25), p.e_j_max * std::cos(std::numbers::pi / 4));
  EXPECT_DOUBLE_EQ(flux_to_ej(p, -0.25), flux_to_ej(p, 0.25));
}

TEST(Transmon, FluxInversionWithinOneKilohertz) {
  TransmonParams p;
  const auto [low, high] = frequency_band(p);
  EXPECT_LT(low, 1.0);
  EXPECT_GT(high, 8.6);
  for (double nu : {5.0, 6.2, 7.169, 8.1, 8.6}) {
    const double phi = frequency_to_flux(p, nu);
    EXPECT_GE(phi, 0.0);
    EXPECT_LT(phi, 0.5);
    EXPECT_LT(std::abs(transmon_frequency(p, phi) - nu), 1e-6) << nu;
  }
  EXPECT_THROW(frequency_to_flux(p, high + 0.1), InvalidArgument);
}

TEST(Transmon, CutoffConvergence) {
  TransmonParams p;
  TransmonParams wide = p;
  wide.charge_cutoff = 40;
  for (double phi : {0.0, 0.2, 0.4}) {
    EXPECT_NEAR(transmon_frequency(p, phi), transmon_frequency(wide, phi), 1e-9);
  }
}

TEST(Transmon, RejectsBadParameters) {
  TransmonParams p;
  p.charge_cutoff = 5;
  EXPECT_THROW(transmon_frequency(p, 0.0), InvalidArgument);
  p = TransmonParams{};
  p.e_c = 0;
  EXPECT_THROW(transmon_frequency(p, 0.0), InvalidArgument);
  EXPECT_THROW(transmon_levels(TransmonParams{}, -1.0), InvalidArgument);
}

}  // namespace
}  // namespace mmqed
