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

#include "mmqed/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mmqed {

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

double hermiticity_defect(const ComplexMatrix& h) {
  if (h.rows() != h.cols()) return std::numeric_limits<double>::infinity();
  return (h - h.adjoint()).norm();
}

void require_hermitian(const ComplexMatrix& h, double rel_tol) {
  if (h.rows() != h.cols()) {
    std::ostringstream msg;
    msg << "matrix is not square (" << h.rows() << "x" << h.cols() << ")";
    throw InvalidArgument(msg.str());
  }
  const double defect = hermiticity_defect(h);
  if (defect > rel_tol * std::max(1.0, h.norm())) {
    std::ostringstream msg;
    msg << "matrix is not Hermitian: ||h - h^dag|| = " << defect;
    throw InvalidArgument(msg.str());
  }
}

EigenSystem eig_hermitian(const ComplexMatrix& h, double rel_tol) {
  require_hermitian(h, rel_tol);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw ContractViolation("eigensolver", "Hermitian eigendecomposition did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix unitary_step(const ComplexMatrix& h, double dt) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  const auto& v = solver.eigenvectors();
  ComplexVector phases(h.rows());
  for (Eigen::Index k = 0; k < h.rows(); ++k) {
    phases(k) = std::polar(1.0, -kTwoPi * solver.eigenvalues()(k) * dt);
  }
  return v * phases.asDiagonal() * v.adjoint();
}

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

ComplexMatrix pauli_y() {
  // σY = −i σ+ + i σ−, with σ+ = |e⟩⟨g|, in (g, e) order.
  ComplexMatrix m(2, 2);
  m << 0, Complex(0, 1), Complex(0, -1), 0;
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << -1, 0, 0, 1;
  return m;
}

ComplexMatrix rotation(double axis_phase, double angle) {
  const ComplexMatrix generator = std::cos(axis_phase) * pauli_x() + std::sin(axis_phase) * pauli_y();
  return std::cos(angle / 2) * ComplexMatrix::Identity(2, 2) - Complex(0, 1) * std::sin(angle / 2) * generator;
}

}  // namespace mmqed
