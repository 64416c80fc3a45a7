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
#include <random>

#include "mmqed/hamiltonian.hpp"
#include "mmqed/linalg.hpp"
#include "mmqed/propagate.hpp"
#include "mmqed/state.hpp"

namespace mmqed {
namespace {

ComplexMatrix random_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = Complex(n(rng), n(rng));
  }
  return m;
}

ComplexMatrix random_hermitian(Eigen::Index dim, std::mt19937_64& rng) {
  const ComplexMatrix a = random_matrix(dim, dim, rng);
  return 0.5 * (a + a.adjoint());
}

TEST(Kron, MatchesFourIndexLoop) {
  std::mt19937_64 rng(7);
  const ComplexMatrix a = random_matrix(2, 3, rng), b = random_matrix(3, 2, rng);
  const ComplexMatrix k = kron(a, b);
  ASSERT_EQ(k.rows(), 6);
  ASSERT_EQ(k.cols(), 6);
  for (int ia = 0; ia < 2; ++ia)
    for (int ja = 0; ja < 3; ++ja)
      for (int ib = 0; ib < 3; ++ib)
        for (int jb = 0; jb < 2; ++jb) EXPECT_EQ(k(ia * 3 + ib, ja * 2 + jb), a(ia, ja) * b(ib, jb));
}

TEST(Pauli, ExcitedStateIsPlusOneOfZ) {
  ComplexVector e(2);
  e << 0, 1;
  EXPECT_NEAR((pauli_z() * e - e).norm(), 0.0, 1e-15);
  // (g, e) ordering: σZ ⊗ I = diag(−1, −1, 1, 1).
  const ComplexMatrix zi = kron(pauli_z(), ComplexMatrix::Identity(2, 2));
  const Eigen::Vector4d expected(-1, -1, 1, 1);
  for (int k = 0; k < 4; ++k) EXPECT_EQ(zi(k, k), Complex(expected(k), 0));
  EXPECT_NEAR((zi - ComplexMatrix(zi.diagonal().asDiagonal())).norm(), 0.0, 0.0);
}

TEST(Pauli, Algebra) {
  const Complex i(0, 1);
  EXPECT_NEAR((pauli_x() * pauli_y() - i * pauli_z()).norm(), 0.0, 1e-15);
  EXPECT_NEAR((pauli_y() * pauli_z() - i * pauli_x()).norm(), 0.0, 1e-15);
  EXPECT_NEAR((pauli_z() * pauli_x() - i * pauli_y()).norm(), 0.0, 1e-15);
}

TEST(Rotation, MatchesSpectralExponential) {
  for (double phase : {0.0, 0.4, std::numbers::pi / 2, 2.5}) {
    for (double angle : {0.3, std::numbers::pi / 2, std::numbers::pi}) {
      const ComplexMatrix n = std::cos(phase) * pauli_x() + std::sin(phase) * pauli_y();
      const auto es = eig_hermitian(n);
      ComplexVector d(2);
      for (int k = 0; k < 2; ++k) d(k) = std::polar(1.0, -0.5 * angle * es.values(k));
      const ComplexMatrix expected = es.vectors * d.asDiagonal() * es.vectors.adjoint();
      EXPECT_NEAR((rotation(phase, angle) - expected).norm(), 0.0, 1e-12);
    }
  }
}

TEST(Eigensolver, RejectsNonHermitian) {
  ComplexMatrix h = ComplexMatrix::Zero(2, 2);
  h(0, 1) = 1.0;
  EXPECT_THROW(eig_hermitian(h), InvalidArgument);
  EXPECT_THROW(eig_hermitian(ComplexMatrix::Zero(2, 3)), InvalidArgument);
}

TEST(UnitaryStep, TwoLevelClosedForm) {
  const double g = 0.037, t = 3.3;
  const ComplexMatrix u = unitary_step(g * pauli_x(), t);
  const double w = kTwoPi * g * t;
  const ComplexMatrix expected =
      std::cos(w) * ComplexMatrix::Identity(2, 2) - Complex(0, 1) * std::sin(w) * pauli_x();
  EXPECT_NEAR((u - expected).norm(), 0.0, 1e-13);
}

TEST(Propagate, RabiFlop) {
  const double g = 0.05;
  const HamiltonianFn h = [g](double) -> ComplexMatrix { return g * pauli_x(); };
  ComplexVector psi(2);
  psi << 1, 0;
  for (double t : {1.0, 2.5, 5.0, 7.3}) {
    const ComplexVector out = propagate(h, psi, 0.0, t);
    EXPECT_NEAR(std::norm(out(1)), std::pow(std::sin(kTwoPi * g * t), 2), 1e-9) << t;
  }
}

TEST(Propagate, NormConservedForRandomDrive) {
  std::mt19937_64 rng(11);
  const ComplexMatrix a = random_hermitian(8, rng), b = random_hermitian(8, rng);
  const HamiltonianFn h = [&](double t) -> ComplexMatrix { return a + std::sin(0.3 * t) * b; };
  ComplexVector psi = random_matrix(8, 1, rng);
  psi.normalize();
  const ComplexVector out = propagate(h, psi, 0.0, 50.0);
  EXPECT_LT(std::abs(out.norm() - 1.0), 1e-9);
}

TEST(Propagate, BackwardRunInvertsForward) {
  std::mt19937_64 rng(12);
  const ComplexMatrix a = random_hermitian(6, rng), b = random_hermitian(6, rng);
  const HamiltonianFn h = [&](double t) -> ComplexMatrix { return a + std::cos(0.2 * t) * b; };
  ComplexVector psi = random_matrix(6, 1, rng);
  psi.normalize();
  const ComplexVector back = propagate(h, propagate(h, psi, 0.0, 20.0), 20.0, 0.0);
  EXPECT_GT(std::norm(psi.dot(back)), 1 - 1e-6);
}

TEST(Propagate, NormToleranceIsEnforced) {
  // A non-Hermitian generator breaks unitarity and must be rejected.
  const HamiltonianFn h = [](double) -> ComplexMatrix {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 1) = 1.0;
    return m;
  };
  ComplexVector psi(2);
  psi << 1, 0;
  EXPECT_ANY_THROW(propagate(h, psi, 0.0, 1.0));
}

TEST(Basis, SingleExcitationBlockOfThreeSites) {
  DeviceParams p;
  p.qubit_levels = 2;
  const auto labels = enumerate_basis(p, 1);
  EXPECT_EQ(labels.size(), 5u);  // two qubits, three sites
  for (const auto& l : labels) EXPECT_EQ(l.excitations(), 1);
  const Basis basis(labels);
  EXPECT_THROW(basis.index_of(basis.qubit_label(1, 1)), InvalidArgument);
}

TEST(Basis, CapCountsMatchCombinatorics) {
  DeviceParams p;
  p.qubit_levels = 2;
  p.photon_cutoff = 3;
  // Five two-level-like modes when the cap is below every cutoff: C(5 + N, N)
  // minus states with a qubit above level 1.
  p.excitation_cap = 2;
  const auto labels = enumerate_basis(p, std::nullopt);
  std::size_t count = 0;
  for (int q1 = 0; q1 <= 1; ++q1)
    for (int q2 = 0; q2 <= 1; ++q2)
      for (int a = 0; a <= 2; ++a)
        for (int b = 0; b <= 2; ++b)
          for (int c = 0; c <= 2; ++c) count += (q1 + q2 + a + b + c <= 2);
  EXPECT_EQ(labels.size(), count);
}

TEST(LabeledState, ValidateChecksNorm) {
  DeviceParams p;
  const HamiltonianModel m(p, 1);
  auto s = LabeledState::basis_state(m.basis(), m.basis()->qubit_label(1, 0));
  EXPECT_NO_THROW(s.validate());
  EXPECT_DOUBLE_EQ(s.population(m.basis()->qubit_label(1, 0)), 1.0);
  s.amplitudes *= 1.1;
  EXPECT_ANY_THROW(s.validate());
}

// ---------------------------------------------------------------- open system

struct SingleQubit {
  ComplexMatrix lowering = ComplexMatrix::Zero(2, 2);
  ComplexMatrix number = ComplexMatrix::Zero(2, 2);
  SingleQubit() {
    lowering(0, 1) = 1.0;
    number(1, 1) = 1.0;
  }
};

TEST(PropagateOpen, NoNoiseMatchesClosed) {
  std::mt19937_64 rng(3);
  const ComplexMatrix a = random_hermitian(4, rng);
  const HamiltonianFn h = [&](double t) -> ComplexMatrix { return a * (1 + 0.1 * t); };
  ComplexVector psi = random_matrix(4, 1, rng);
  psi.normalize();
  SingleQubit q;
  QubitNoise noise{kron(q.lowering, ComplexMatrix::Identity(2, 2)), kron(q.number, ComplexMatrix::Identity(2, 2))};
  const std::vector<QubitNoise> qubits{noise};
  const ComplexVector closed = propagate(h, psi, 0.0, 10.0);
  const ComplexMatrix rho = propagate_open(h, psi * psi.adjoint(), qubits, 0.0, 10.0);
  EXPECT_NEAR((rho - closed * closed.adjoint()).norm(), 0.0, 1e-9);
}

TEST(PropagateOpen, AmplitudeDampingRate) {
  SingleQubit q;
  const HamiltonianFn h = [](double) -> ComplexMatrix { return ComplexMatrix::Zero(2, 2); };
  const std::vector<QubitNoise> qubits{{q.lowering, q.number, 2.36}};
  ComplexMatrix rho = ComplexMatrix::Zero(2, 2);
  rho(1, 1) = 1.0;
  const ComplexMatrix out = propagate_open(h, rho, qubits, 0.0, 1000.0);
  const double expected = std::exp(-1.0 / 2.36);
  EXPECT_NEAR(out(1, 1).real() / expected, 1.0, 0.02);
  EXPECT_NEAR(out.trace().real(), 1.0, 1e-9);
}

TEST(PropagateOpen, QuasiStaticDephasingGivesGaussianEnvelope) {
  SingleQubit q;
  const double sigma = 492.0;
  const HamiltonianFn h = [](double) -> ComplexMatrix { return ComplexMatrix::Zero(2, 2); };
  const std::vector<QubitNoise> qubits{{q.lowering, q.number, std::numeric_limits<double>::infinity(), sigma}};
  ComplexMatrix rho = ComplexMatrix::Constant(2, 2, 0.5);
  OpenSystemOptions open{400, 5, 0};
  PropagationOptions opts;
  opts.dt = 1.0;  // H is static per realization, so the step is exact
  const ComplexMatrix out = propagate_open(h, rho, qubits, 0.0, sigma, open, opts);
  // Mean of cos(x), x ~ N(0, 1), has standard deviation 0.447 per sample.
  const double envelope = 2.0 * std::abs(out(0, 1));
  EXPECT_NEAR(envelope, std::exp(-0.5), 4 * 0.447 / std::sqrt(400.0));
  EXPECT_NEAR(detuning_std_for_sigma(sigma), 1.0 / (kTwoPi * sigma), 1e-15);
}

TEST(PropagateOpen, SeededRealizationsAreDeterministic) {
  SingleQubit q;
  const HamiltonianFn h = [](double) -> ComplexMatrix { return 0.01 * pauli_x(); };
  const std::vector<QubitNoise> qubits{{q.lowering, q.number, 2.0, 300.0}};
  ComplexMatrix rho = ComplexMatrix::Zero(2, 2);
  rho(0, 0) = 1.0;
  OpenSystemOptions open{16, 99, 0};
  const ComplexMatrix a = propagate_open(h, rho, qubits, 0.0, 40.0, open);
  open.threads = 1;
  const ComplexMatrix b = propagate_open(h, rho, qubits, 0.0, 40.0, open);
  EXPECT_EQ((a - b).norm(), 0.0);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a);
  EXPECT_GT(es.eigenvalues().minCoeff(), -1e-12);
}

TEST(PropagateOpen, TimedOperationsAreApplied) {
  const HamiltonianFn h = [](double) -> ComplexMatrix { return ComplexMatrix::Zero(2, 2); };
  ComplexMatrix rho = ComplexMatrix::Zero(2, 2);
  rho(0, 0) = 1.0;
  const std::vector<TimedOperation> ops{{2.0, pauli_x()}};
  const ComplexMatrix out = propagate_open(h, rho, {}, ops, 0.0, 5.0);
  EXPECT_NEAR(out(1, 1).real(), 1.0, 1e-12);
}

}  // namespace
}  // namespace mmqed
