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

#include "mmqed/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "mmqed/parallel.hpp"

namespace mmqed {

namespace {

ComplexMatrix pauli(PauliAxis a) {
  switch (a) {
    case PauliAxis::kX:
      return pauli_x();
    case PauliAxis::kY:
      return pauli_y();
    case PauliAxis::kZ:
      return pauli_z();
  }
  return pauli_z();
}

// Columns: eigenvectors for eigenvalue −1 then +1.
ComplexMatrix measurement_basis(PauliAxis a) { return eig_hermitian(pauli(a)).vectors; }

constexpr std::array<double, 2> kSign{-1.0, 1.0};

std::array<double, 4> born(const Matrix4c& rho, const Setting& s) {
  const ComplexMatrix b = kron(measurement_basis(s.first), measurement_basis(s.second));
  std::array<double, 4> p{};
  double total = 0;
  for (int k = 0; k < 4; ++k) {
    const Vector4c v = b.col(k);
    p[static_cast<std::size_t>(k)] = std::max(0.0, (v.adjoint() * rho * v)(0, 0).real());
    total += p[static_cast<std::size_t>(k)];
  }
  for (double& x : p) x /= total;
  return p;
}

std::array<double, 4> multinomial(const std::array<double, 4>& p, std::uint64_t shots, std::mt19937_64& rng) {
  std::array<double, 4> counts{};
  std::uint64_t left = shots;
  double mass = 1.0;
  for (std::size_t k = 0; k < 3; ++k) {
    const double q = mass > 0 ? std::clamp(p[k] / mass, 0.0, 1.0) : 0.0;
    std::binomial_distribution<std::uint64_t> draw(left, q);
    const std::uint64_t n = draw(rng);
    counts[k] = static_cast<double>(n);
    left -= n;
    mass -= p[k];
  }
  counts[3] = static_cast<double>(left);
  return counts;
}

double percentile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto i = static_cast<std::size_t>(pos);
  const double f = pos - static_cast<double>(i);
  return i + 1 < v.size() ? v[i] * (1 - f) + v[i + 1] * f : v.back();
}

Interval summarize(const std::vector<double>& v) {
  Interval out;
  for (double x : v) out.mean += x;
  out.mean /= static_cast<double>(v.size());
  for (double x : v) out.stddev += (x - out.mean) * (x - out.mean);
  out.stddev = std::sqrt(out.stddev / std::max<double>(1.0, static_cast<double>(v.size()) - 1.0));
  out.low = percentile(v, 0.025);
  out.high = percentile(v, 0.975);
  return out;
}

}  // namespace

char axis_name(PauliAxis a) { return a == PauliAxis::kX ? 'X' : a == PauliAxis::kY ? 'Y' : 'Z'; }

std::string Setting::name() const { return {axis_name(first), axis_name(second)}; }

std::vector<Setting> all_settings() {
  std::vector<Setting> out;
  for (auto a : {PauliAxis::kX, PauliAxis::kY, PauliAxis::kZ}) {
    for (auto b : {PauliAxis::kX, PauliAxis::kY, PauliAxis::kZ}) out.push_back({a, b});
  }
  return out;
}

std::array<double, 4> MeasurementData::frequencies(std::size_t setting) const {
  std::array<double, 4> f = counts.at(setting);
  double total = 0;
  for (double c : f) total += c;
  if (!(total > 0)) throw InvalidArgument("setting " + settings.at(setting).name() + " has no counts");
  for (double& c : f) c /= total;
  return f;
}

void DensityMatrix::validate(double tol) const {
  if ((rho - rho.adjoint()).norm() > tol) throw ContractViolation("density matrix", "not Hermitian");
  if (std::abs(rho.trace() - 1.0) > tol) throw ContractViolation("density matrix", "trace differs from 1");
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(rho);
  if (es.eigenvalues().minCoeff() < -tol) throw ContractViolation("density matrix", "negative eigenvalue");
}

MeasurementData exact_measurements(const Matrix4c& rho, const std::vector<Setting>& settings) {
  MeasurementData out;
  out.settings = settings;
  out.shots = 1;
  for (const auto& s : settings) out.counts.push_back(born(rho, s));
  return out;
}

MeasurementData simulate_measurements(const Matrix4c& rho, const std::vector<Setting>& settings, std::uint64_t shots,
                                      std::uint64_t seed) {
  if (shots < 1) throw InvalidArgument("shots must be >= 1");
  MeasurementData out;
  out.settings = settings;
  out.shots = static_cast<double>(shots);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  std::mt19937_64 rng(seq);
  for (const auto& s : settings) out.counts.push_back(multinomial(born(rho, s), shots, rng));
  return out;
}

Matrix4c project_to_physical(const Matrix4c& hermitian) {
  const Matrix4c h = 0.5 * (hermitian + hermitian.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(h);
  Eigen::Vector4d lambda = es.eigenvalues() / h.trace().real();
  // Clip the most negative eigenvalues and spread their weight evenly over
  // the remaining ones (descending order).
  std::array<int, 4> order{3, 2, 1, 0};
  double accumulated = 0;
  int kept = 4;
  for (int i = 3; i >= 0; --i) {
    const int k = order[static_cast<std::size_t>(i)];
    if (lambda(k) + accumulated / kept >= 0) break;
    accumulated += lambda(k);
    lambda(k) = 0;
    --kept;
  }
  for (int i = 0; i < kept; ++i) lambda(order[static_cast<std::size_t>(i)]) += accumulated / kept;
  return es.eigenvectors() * lambda.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

DensityMatrix reconstruct_state(const MeasurementData& data) {
  const auto wanted = all_settings();
  std::vector<std::string> missing;
  std::array<int, 9> index{};
  for (std::size_t w = 0; w < wanted.size(); ++w) {
    const auto it = std::find(data.settings.begin(), data.settings.end(), wanted[w]);
    if (it == data.settings.end()) {
      missing.push_back(wanted[w].name());
    } else {
      index[w] = static_cast<int>(it - data.settings.begin());
    }
  }
  if (!missing.empty()) {
    std::ostringstream msg;
    msg << "tomography is missing settings:";
    for (const auto& m : missing) msg << " " << m;
    throw InvalidArgument(msg.str());
  }

  // expectation[i][j] for σ_i ⊗ σ_j with i, j ∈ {I, X, Y, Z}.
  double expectation[4][4] = {};
  double single_count[4][4] = {};
  expectation[0][0] = 1.0;
  for (std::size_t w = 0; w < wanted.size(); ++w) {
    const auto f = data.frequencies(static_cast<std::size_t>(index[w]));
    const int a = 1 + static_cast<int>(wanted[w].first), b = 1 + static_cast<int>(wanted[w].second);
    for (int k = 0; k < 4; ++k) {
      const double s1 = kSign[static_cast<std::size_t>(k / 2)], s2 = kSign[static_cast<std::size_t>(k % 2)];
      const double p = f[static_cast<std::size_t>(k)];
      expectation[a][b] += s1 * s2 * p;
      expectation[a][0] += s1 * p;
      expectation[0][b] += s2 * p;
    }
    single_count[a][0] += 1;
    single_count[0][b] += 1;
  }
  for (int i = 1; i < 4; ++i) {
    expectation[i][0] /= single_count[i][0];
    expectation[0][i] /= single_count[0][i];
  }

  const std::array<ComplexMatrix, 4> sigma{ComplexMatrix::Identity(2, 2), pauli_x(), pauli_y(), pauli_z()};
  Matrix4c linear = Matrix4c::Zero();
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) linear += expectation[i][j] * kron(sigma[static_cast<std::size_t>(i)], sigma[static_cast<std::size_t>(j)]);
  }
  linear /= 4.0;

  DensityMatrix out;
  out.rho = project_to_physical(linear);
  out.shots = data.shots;
  out.settings = data.settings;
  return out;
}

double state_fidelity(const Matrix4c& rho, const Vector4c& target) {
  const Vector4c t = target.normalized();
  return std::clamp((t.adjoint() * rho * t)(0, 0).real(), 0.0, 1.0);
}

double bell_fidelity(const Matrix4c& rho) {
  return std::clamp(0.5 * (rho(0, 0).real() + rho(3, 3).real()) + std::abs(rho(0, 3)), 0.0, 1.0);
}

double concurrence(const Matrix4c& rho) {
  const ComplexMatrix yy = kron(pauli_y(), pauli_y());
  const Matrix4c tilde = yy * rho.conjugate() * yy;
  // Eigenvalues of √ρ·ρ̃·√ρ are the squares of the Wootters λ's.
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(0.5 * (rho + rho.adjoint()));
  const Eigen::Vector4d ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Matrix4c sqrt_rho = es.eigenvectors() * ev.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
  const Matrix4c m = sqrt_rho * tilde * sqrt_rho;
  Eigen::SelfAdjointEigenSolver<Matrix4c> rs(0.5 * (m + m.adjoint()));
  std::array<double, 4> lambda{};
  for (int k = 0; k < 4; ++k) lambda[static_cast<std::size_t>(k)] = std::sqrt(std::max(0.0, rs.eigenvalues()(k)));
  std::sort(lambda.begin(), lambda.end(), std::greater<>());
  return std::max(0.0, lambda[0] - lambda[1] - lambda[2] - lambda[3]);
}

BootstrapResult bootstrap(const MeasurementData& data, int resamples, std::uint64_t seed, int threads) {
  if (resamples < 2) throw InvalidArgument("bootstrap needs at least two resamples");
  if (!(data.shots >= 1)) throw InvalidArgument("bootstrap needs sampled counts");
  const auto shots = static_cast<std::uint64_t>(std::llround(data.shots));
  std::vector<double> fid(static_cast<std::size_t>(resamples)), conc(static_cast<std::size_t>(resamples));
  parallel_for(
      fid.size(),
      [&](std::size_t r) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(r)};
        std::mt19937_64 rng(seq);
        MeasurementData redraw = data;
        for (std::size_t s = 0; s < data.settings.size(); ++s) redraw.counts[s] = multinomial(data.frequencies(s), shots, rng);
        const auto rho = reconstruct_state(redraw).rho;
        fid[r] = bell_fidelity(rho);
        conc[r] = concurrence(rho);
      },
      threads);
  return {summarize(fid), summarize(conc), resamples};
}

}  // namespace mmqed
