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

#pragma once

#include <utility>

#include "mmqed/linalg.hpp"

namespace mmqed {

/// Cooper-pair-box parameters of a flux-tunable (symmetric SQUID) transmon.
/// The defaults put the maximum 0-1 frequency near 9 GHz; they are stand-ins,
/// not fitted device values.
struct TransmonParams {
  double e_c = 0.25;       // GHz
  double e_j_max = 41.0;   // GHz
  int charge_cutoff = 20;  // charge basis −N..N
  double n_g = 0.5;

  void validate() const;
};

/// Lowest `count` eigenenergies of 4E_C(n − n_g)² − (E_J/2)(|n⟩⟨n+1| + h.c.),
/// referenced to the ground state. Throws if raising the cutoff by 5 changes
/// any returned level by more than 1e-9 relative.
RealVector transmon_levels(const TransmonParams& p, double e_j, int count = 4);

/// E_J(Φ) = E_J,max |cos(πΦ)| with Φ in flux quanta.
double flux_to_ej(const TransmonParams& p, double phi);

/// ν01 at flux phi.
double transmon_frequency(const TransmonParams& p, double phi);

/// ν12 − ν01 at flux phi.
double transmon_anharmonicity(const TransmonParams& p, double phi);

/// Achievable ν01 band [ν01(0.5 − 1e-6), ν01(0)].
std::pair<double, double> frequency_band(const TransmonParams& p);

/// Bisection inverse of ν01(Φ) on [0, 0.5]; |ν01(result) − target| < 1 kHz.
double frequency_to_flux(const TransmonParams& p, double target_nu);

}  // namespace mmqed
