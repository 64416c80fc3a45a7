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

#include "mmqed/propagate.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "mmqed/parallel.hpp"

namespace mmqed {

namespace {

std::size_t step_count(double span, double dt) {
  if (!(dt > 0)) throw InvalidArgument("propagation step dt must be positive");
  const double steps = std::ceil(std::abs(span) / dt - 1e-9);
  return static_cast<std::size_t>(std::max(1.0, steps));
}

// Caches the last step propagator; piecewise-constant stretches of a
// schedule then cost one matrix-vector product per step.
class StepCache {
 public:
  StepCache(const PropagationOptions& options, double h) : options_(options), h_(h) {}

  const ComplexMatrix& at(const ComplexMatrix& hamiltonian) {
    if (valid_ && hamiltonian.rows() == last_h_.rows() && hamiltonian == last_h_) return u_;
    if (options_.check_hermitian) require_hermitian(hamiltonian);
    last_h_ = hamiltonian;
    u_ = unitary_step(hamiltonian, h_);
    valid_ = true;
    return u_;
  }

 private:
  const PropagationOptions& options_;
  double h_;
  bool valid_ = false;
  ComplexMatrix last_h_;
  ComplexMatrix u_;
};

void check_norm(double norm, double tol) {
  if (std::abs(norm - 1.0) > tol) {
    std::ostringstream msg;
    msg << "norm drifted to " << norm << " (dt too large or Hamiltonian not Hermitian)";
    throw ContractViolation("norm conservation", msg.str());
  }
}

}  // namespace

ComplexVector propagate(const HamiltonianFn& hamiltonian, const ComplexVector& psi0, double t0, double t1,
                        const PropagationOptions& options) {
  const double span = t1 - t0;
  if (span == 0.0) return psi0;
  const std::size_t n = step_count(span, options.dt);
  const double h = span / static_cast<double>(n);
  const double norm0 = psi0.norm();
  StepCache cache(options, h);
  ComplexVector psi = psi0;
  for (std::size_t k = 0; k < n; ++k) {
    const double t_mid = t0 + (static_cast<double>(k) + 0.5) * h;
    psi = cache.at(hamiltonian(t_mid)) * psi;
  }
  if (norm0 > 0) check_norm(psi.norm() / norm0, options.norm_tolerance);
  return psi;
}

LabeledState propagate(const HamiltonianFn& hamiltonian, const LabeledState& psi0, double t0, double t1,
                       const PropagationOptions& options) {
  if (!psi0.basis || static_cast<std::size_t>(psi0.amplitudes.size()) != psi0.basis->size()) {
    throw InvalidArgument("state length does not match its basis");
  }
  return LabeledState{propagate(hamiltonian, psi0.amplitudes, t0, t1, options), psi0.basis};
}

double detuning_std_for_sigma(double ramsey_sigma_ns) {
  if (!(ramsey_sigma_ns > 0)) throw InvalidArgument("Ramsey sigma must be positive");
  if (std::isinf(ramsey_sigma_ns)) return 0.0;
  // ⟨exp(i2πδt)⟩ over δ ~ N(0, s²) is exp(−(2πs t)²/2).
  return 1.0 / (kTwoPi * ramsey_sigma_ns);
}

ComplexMatrix propagate_open(const HamiltonianFn& hamiltonian, const ComplexMatrix& rho0,
                             std::span<const QubitNoise> qubits, double t0, double t1, const OpenSystemOptions& open,
                             const PropagationOptions& options) {
  return propagate_open(hamiltonian, rho0, qubits, {}, t0, t1, open, options);
}

ComplexMatrix propagate_open(const HamiltonianFn& hamiltonian, const ComplexMatrix& rho0,
                             std::span<const QubitNoise> qubits, std::span<const TimedOperation> ops, double t0,
                             double t1, const OpenSystemOptions& open, const PropagationOptions& options) {
  if (open.realizations < 1) throw InvalidArgument("realizations must be >= 1");
  if (rho0.rows() != rho0.cols()) throw InvalidArgument("density matrix must be square");
  const Eigen::Index dim = rho0.rows();

  struct Damping {
    double rate;  // 1/ns
    ComplexMatrix l, l_dag, l_dag_l;
  };
  std::vector<Damping> damping;
  std::vector<double> detuning_std;
  bool any_dephasing = false;
  for (const auto& q : qubits) {
    if (q.lowering.rows() != dim || q.number.rows() != dim) {
      throw InvalidArgument("noise operators do not match the density-matrix dimension");
    }
    if (!(q.t1_us > 0)) throw InvalidArgument("T1 must be positive");
    if (std::isfinite(q.t1_us)) {
      damping.push_back({1.0 / (1000.0 * q.t1_us), q.lowering, q.lowering.adjoint(),
                         q.lowering.adjoint() * q.lowering});
    }
    detuning_std.push_back(detuning_std_for_sigma(q.ramsey_sigma_ns));
    any_dephasing = any_dephasing || detuning_std.back() > 0;
  }

  const int realizations = any_dephasing ? open.realizations : 1;
  if (t1 < t0) throw InvalidArgument("open-system propagation runs forward in time");
  double previous = t0;
  for (const auto& op : ops) {
    if (op.time < previous || op.time > t1) throw InvalidArgument("timed operations must be sorted within [t0, t1]");
    if (op.op.rows() != dim || op.op.cols() != dim) throw InvalidArgument("timed operation has the wrong dimension");
    previous = op.time;
  }
  // Interval boundaries: t0, each operation time, t1.
  std::vector<double> edges{t0};
  for (const auto& op : ops) edges.push_back(op.time);
  edges.push_back(t1);

  std::vector<ComplexMatrix> results(static_cast<std::size_t>(realizations));
  parallel_for(
      results.size(),
      [&](std::size_t r) {
        std::seed_seq seq{static_cast<std::uint32_t>(open.seed), static_cast<std::uint32_t>(open.seed >> 32),
                          static_cast<std::uint32_t>(r)};
        std::mt19937_64 rng(seq);
        std::normal_distribution<double> normal(0.0, 1.0);
        std::vector<double> detunings(qubits.size(), 0.0);
        for (std::size_t q = 0; q < qubits.size(); ++q) detunings[q] = detuning_std[q] * normal(rng);

        ComplexMatrix offset = ComplexMatrix::Zero(dim, dim);
        for (std::size_t q = 0; q < qubits.size(); ++q) offset += detunings[q] * qubits[q].number;

        ComplexMatrix rho = rho0;
        for (std::size_t seg = 0; seg + 1 < edges.size(); ++seg) {
          if (seg > 0) {
            const ComplexMatrix& op = ops[seg - 1].op;
            rho = op * rho * op.adjoint();
          }
          const double a = edges[seg], span = edges[seg + 1] - a;
          if (span <= 0) continue;
          const std::size_t n = step_count(span, options.dt);
          const double h = span / static_cast<double>(n);
          StepCache cache(options, h);
          for (std::size_t k = 0; k < n; ++k) {
            const double t_mid = a + (static_cast<double>(k) + 0.5) * h;
            const ComplexMatrix& u = cache.at(hamiltonian(t_mid) + offset);
            rho = u * rho * u.adjoint();
            for (const auto& d : damping) {
              const ComplexMatrix jump = d.l * rho * d.l_dag;
              const ComplexMatrix anti = d.l_dag_l * rho;
              rho += (h * d.rate) * (jump - 0.5 * (anti + anti.adjoint()));
            }
          }
        }
        results[r] = std::move(rho);
      },
      open.threads);

  ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);
  for (const auto& r : results) rho += r;
  rho /= static_cast<double>(realizations);
  const double trace_error = std::abs(rho.trace() - rho0.trace());
  if (trace_error > options.norm_tolerance) {
    std::ostringstream msg;
    msg << "trace drifted by " << trace_error;
    throw ContractViolation("trace conservation", msg.str());
  }
  return rho;
}

}  // namespace mmqed
