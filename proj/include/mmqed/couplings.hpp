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

#include "mmqed/hamiltonian.hpp"

namespace mmqed {

/// Effective two-qubit couplings for qubits detuned from the filter:
///   H_eff = H_Q + J (σ1+σ2− + σ1−σ2+) + ξ σ1Z σ2Z.
struct EffectiveCouplings {
  double j = 0;      // GHz
  double xi = 0;     // GHz
  double delta = 0;  // (ν_Q1 + ν_Q2 − 2ν_F)/2, GHz
};

/// Mean detuning of the pair from the bare filter frequency.
double mean_detuning(const DeviceParams& p, double nu_q1, double nu_q2);

/// Closed-form virtual-photon exchange J ≈ (g_Q²/g_F)(g_F/Δ)^n, with g_Q the
/// mean of the two qubit–filter couplings. For g_F = 0 and n = 1 this is g_Q²/Δ.
double approx_j(const DeviceParams& p, double delta);

/// ξ ≈ 4nJ²/Δ using approx_j.
double approx_xi(const DeviceParams& p, double delta);

EffectiveCouplings approx_couplings(const DeviceParams& p, double nu_q1, double nu_q2);

/// Half the minimum splitting between the two qubit-like branches of the
/// single-excitation block, found by minimizing the splitting over ν_Q2 with
/// ν_Q1 held at nu_q_center.
double numeric_j(const DeviceParams& p, double nu_q_center);

/// ξ = (E_ee + E_gg − E_eg − E_ge)/4 from the dressed energies with maximum
/// overlap on the four computational states.
double numeric_xi(const DeviceParams& p, double nu_q1, double nu_q2);

}  // namespace mmqed
