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
#include <cstddef>
#include <limits>
#include <memory>
#include <optional>
#include <vector>

#include "mmqed/linalg.hpp"
#include "mmqed/state.hpp"

namespace mmqed {

/// Device constants of two qubits coupled through an n-site resonator chain.
/// Frequencies and couplings in GHz (h = 1).
struct DeviceParams {
  int n_modes = 3;
  double nu_f = 7.169;
  double g_f = 0.118;
  double g_q1f = 0.135;
  double g_q2f = 0.144;
  int qubit_levels = 2;                         // 2 or 3
  std::array<double, 2> anharmonicity{-0.25, -0.25};  // ν12 − ν01, used when qubit_levels = 3
  int photon_cutoff = 3;                        // per site
  int excitation_cap = 3;
  std::array<double, 2> t1_us{2.36, 2.14};
  std::array<double, 2> ramsey_sigma_ns{312.0, 492.0};
  std::size_t max_dimension = 20000;

  void validate() const;

  /// Fitted three-resonator device: ν_F = 7.169 GHz, g_F = 118 MHz,
  /// g_Q1F (g_Q2F) = 135 (144) MHz.
  static DeviceParams reference_device();
};

/// Qubit–filter Hamiltonian
///   H = Σ_k [ν_k N_k + α_k |2⟩⟨2|_k] + ν_F Σ_i a_i†a_i + g_F Σ_i (a_i†a_{i−1} + h.c.)
///       + g_Q1F (a_1† b_1 + h.c.) + g_Q2F (a_n† b_2 + h.c.)
/// in the rotating-wave form, on the tensor basis q1 ⊗ q2 ⊗ site_1 ⊗ … ⊗ site_n
/// truncated to total excitations ≤ excitation_cap (or a single sector). The
/// qubit ladder b has matrix elements √k (1 on the 0↔1 transition).
class HamiltonianModel {
 public:
  explicit HamiltonianModel(const DeviceParams& params, std::optional<int> sector = std::nullopt);

  const DeviceParams& params() const { return params_; }
  const std::shared_ptr<const Basis>& basis() const { return basis_; }
  Eigen::Index dimension() const { return static_cast<Eigen::Index>(basis_->size()); }
  std::optional<int> sector() const { return sector_; }

  /// Hamiltonian at the given bare qubit 0-1 frequencies.
  ComplexMatrix operator()(double nu_q1, double nu_q2) const;

  /// qubit ∈ {1, 2}.
  const ComplexMatrix& qubit_number(int qubit) const;
  const ComplexMatrix& qubit_lowering(int qubit) const;
  ComplexMatrix excitation_number() const;
  const ComplexMatrix& static_part() const { return static_; }

 private:
  DeviceParams params_;
  std::optional<int> sector_;
  std::shared_ptr<const Basis> basis_;
  ComplexMatrix static_;
  std::array<ComplexMatrix, 2> number_;
  std::array<ComplexMatrix, 2> lowering_;
};

struct BuiltHamiltonian {
  ComplexMatrix matrix;
  std::shared_ptr<const Basis> basis;
};

/// One-shot construction; validates the result is Hermitian.
BuiltHamiltonian build_hamiltonian(const DeviceParams& params, double nu_q1, double nu_q2);

/// Bare-basis enumeration used by HamiltonianModel.
std::vector<OccupationLabel> enumerate_basis(const DeviceParams& params, std::optional<int> sector);

/// Dressed eigenbasis of a Hamiltonian with each eigenvector assigned to one
/// bare label. Assignment is a greedy bijection in decreasing overlap order.
struct DressedBasis {
  EigenSystem eig;
  std::vector<std::size_t> eigen_index;  // bare label index -> eigenvector column
  std::vector<double> overlap;           // |⟨label|dressed⟩|² per bare label

  ComplexVector vector(std::size_t label_index) const {
    return eig.vectors.col(static_cast<Eigen::Index>(eigen_index[label_index]));
  }
  double energy(std::size_t label_index) const {
    return eig.values(static_cast<Eigen::Index>(eigen_index[label_index]));
  }
  /// Unitary whose column i is the dressed state assigned to bare label i.
  ComplexMatrix dressing() const;
};

DressedBasis dress(const ComplexMatrix& hamiltonian);

/// Normal mode of the resonator chain.
struct FilterMode {
  double frequency = 0;          // GHz
  RealVector site_amplitudes;    // sign fixed so the site-1 amplitude is ≥ 0
  double end_amplitude_q1 = 0;   // |site-1 amplitude|
  double end_amplitude_q2 = 0;   // |site-n amplitude|
  double g_q1 = 0;               // g_Q1F · |site-1 amplitude|
  double g_q2 = 0;               // g_Q2F · |site-n amplitude|
};

/// Eigen-decomposition of the n-site tridiagonal chain, ascending in frequency.
std::vector<FilterMode> filter_normal_modes(const DeviceParams& params);

}  // namespace mmqed
