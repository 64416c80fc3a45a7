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

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "mmqed/linalg.hpp"
#include "mmqed/state.hpp"

namespace mmqed {

/// Time-dependent Hamiltonian in GHz; t in ns.
using HamiltonianFn = std::function<ComplexMatrix(double t)>;

struct PropagationOptions {
  double dt = 0.01;               // ns
  double norm_tolerance = 1e-6;   // hard failure threshold on |‖ψ‖ − 1|
  bool check_hermitian = true;
};

/// Midpoint-exponential stepping: each step of length h ≤ dt applies
/// exp(−i2π H(t + h/2) h). Steps with a Hamiltonian identical to the previous
/// step reuse its propagator. A negative span (t1 < t0) runs time backwards,
/// which inverts the forward evolution over the same interval.
ComplexVector propagate(const HamiltonianFn& hamiltonian, const ComplexVector& psi0, double t0, double t1,
                        const PropagationOptions& options = {});

LabeledState propagate(const HamiltonianFn& hamiltonian, const LabeledState& psi0, double t0, double t1,
                       const PropagationOptions& options = {});

/// Per-qubit open-system channel. `lowering` is the qubit's ladder operator in
/// the simulation basis and `number` its level-number operator; the
/// quasi-static detuning δ enters as H + δ·number.
struct QubitNoise {
  ComplexMatrix lowering;
  ComplexMatrix number;
  double t1_us = std::numeric_limits<double>::infinity();
  double ramsey_sigma_ns = std::numeric_limits<double>::infinity();
};

/// Detuning standard deviation (GHz) that makes an isolated Ramsey fringe
/// decay as exp(−t²/2σ²).
double detuning_std_for_sigma(double ramsey_sigma_ns);

struct OpenSystemOptions {
  int realizations = 1;
  std::uint64_t seed = 0;
  int threads = 0;  // 0: library default
};

/// Density-matrix evolution: unitary midpoint steps interleaved with a
/// first-order amplitude-damping update (rate 1/T1 per qubit), averaged over
/// quasi-static Gaussian qubit detunings. Realization r draws its detunings
/// from a generator seeded by (seed, r); the average is reduced in index order.
ComplexMatrix propagate_open(const HamiltonianFn& hamiltonian, const ComplexMatrix& rho0,
                             std::span<const QubitNoise> qubits, double t0, double t1,
                             const OpenSystemOptions& open = {}, const PropagationOptions& options = {});

/// Instantaneous unitary applied at a fixed time (ideal pulses).
struct TimedOperation {
  double time = 0;  // ns
  ComplexMatrix op;
};

/// As above with ideal operations interleaved; ops must be sorted by time and
/// lie in [t0, t1]. The quasi-static detuning is shared by all intervals of a
/// realization.
ComplexMatrix propagate_open(const HamiltonianFn& hamiltonian, const ComplexMatrix& rho0,
                             std::span<const QubitNoise> qubits, std::span<const TimedOperation> ops, double t0,
                             double t1, const OpenSystemOptions& open = {}, const PropagationOptions& options = {});

}  // namespace mmqed
