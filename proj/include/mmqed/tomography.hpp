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

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "mmqed/linalg.hpp"

namespace mmqed {

using Matrix4c = Eigen::Matrix4cd;
using Vector4c = Eigen::Vector4cd;

enum class PauliAxis { kX, kY, kZ };

char axis_name(PauliAxis a);

/// Measurement basis for qubit 1 and qubit 2.
struct Setting {
  PauliAxis first = PauliAxis::kZ;
  PauliAxis second = PauliAxis::kZ;

  std::string name() const;
  bool operator==(const Setting&) const = default;
};

/// The nine settings {X, Y, Z}².
std::vector<Setting> all_settings();

/// Outcome index 2·b1 + b2, where b = 1 marks the +1 eigenvalue of the
/// measured Pauli (for Z, the excited state).
struct MeasurementData {
  std::vector<Setting> settings;
  std::vector<std::array<double, 4>> counts;  // per setting
  double shots = 0;                           // per setting; counts are probabilities when shots == 1 and exact

  std::array<double, 4> frequencies(std::size_t setting) const;
};

/// Two-qubit state in the computational order gg, ge, eg, ee.
struct DensityMatrix {
  Matrix4c rho = Matrix4c::Identity() / 4.0;
  double shots = 0;
  std::vector<Setting> settings;

  /// Hermitian and unit trace within tol, eigenvalues ≥ −tol.
  void validate(double tol = 1e-9) const;
};

/// Born probabilities for each setting (no sampling).
MeasurementData exact_measurements(const Matrix4c& rho, const std::vector<Setting>& settings);

/// Multinomial sampling of each setting; deterministic for a fixed seed.
MeasurementData simulate_measurements(const Matrix4c& rho, const std::vector<Setting>& settings, std::uint64_t shots,
                                      std::uint64_t seed);

/// Linear inversion from the 15 Pauli expectations followed by projection to
/// the closest unit-trace positive semidefinite matrix.
DensityMatrix reconstruct_state(const MeasurementData& data);

/// Closest (Frobenius) unit-trace PSD matrix to a Hermitian matrix.
Matrix4c project_to_physical(const Matrix4c& hermitian);

double state_fidelity(const Matrix4c& rho, const Vector4c& target);

/// max over Φ of ⟨Ψ|ρ|Ψ⟩ with |Ψ⟩ = (|gg⟩ + e^{iΦ}|ee⟩)/√2.
double bell_fidelity(const Matrix4c& rho);

double concurrence(const Matrix4c& rho);

struct Interval {
  double mean = 0;
  double stddev = 0;
  double low = 0;   // 2.5 %
  double high = 0;  // 97.5 %
};

struct BootstrapResult {
  Interval fidelity;
  Interval concurrence;
  int resamples = 0;
};

/// Parametric bootstrap: counts are redrawn from the observed frequencies of
/// each setting and the reconstruction is repeated.
BootstrapResult bootstrap(const MeasurementData& data, int resamples, std::uint64_t seed, int threads = 0);

}  // namespace mmqed
