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

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace mmqed {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Raised when an argument violates an operation's precondition.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a numerical invariant (norm, leakage, hermiticity, ...) is
/// violated during a computation. `invariant()` names the violated contract.
class ContractViolation : public std::runtime_error {
 public:
  ContractViolation(std::string invariant, const std::string& detail)
      : std::runtime_error(invariant + ": " + detail), invariant_(std::move(invariant)) {}
  const std::string& invariant() const noexcept { return invariant_; }

 private:
  std::string invariant_;
};

/// Tensor product with the left factor outermost:
/// (a ⊗ b)(i_a * r_b + i_b, j_a * c_b + j_b) = a(i_a, j_a) * b(i_b, j_b).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Frobenius norm of h - h†.
double hermiticity_defect(const ComplexMatrix& h);

/// Throws InvalidArgument if ‖h − h†‖ exceeds rel_tol · max(1, ‖h‖).
void require_hermitian(const ComplexMatrix& h, double rel_tol = 1e-12);

struct EigenSystem {
  RealVector values;      // ascending
  ComplexMatrix vectors;  // column k pairs with values(k)
};

/// Dense Hermitian eigensolver. Rejects non-Hermitian input, reporting the
/// norm of (h − h†).
EigenSystem eig_hermitian(const ComplexMatrix& h, double rel_tol = 1e-12);

/// exp(−i 2π h dt) for Hermitian h (GHz) and dt (ns).
ComplexMatrix unitary_step(const ComplexMatrix& h, double dt);

/// Pauli matrices in the (g, e) ordering with σZ|e⟩ = +|e⟩.
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

/// Single-qubit rotation exp(−i angle/2 (cos φ σX + sin φ σY)) in (g, e) order.
/// axis_phase = 0 is an X rotation, π/2 a Y rotation.
ComplexMatrix rotation(double axis_phase, double angle);

}  // namespace mmqed
