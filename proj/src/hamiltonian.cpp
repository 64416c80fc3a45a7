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

#include "mmqed/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <tuple>

namespace mmqed {

void DeviceParams::validate() const {
  if (n_modes < 1) throw InvalidArgument("device.n_modes must be >= 1");
  if (!(nu_f > 0)) throw InvalidArgument("device.nu_f must be positive");
  if (g_f < 0 || g_q1f < 0 || g_q2f < 0) throw InvalidArgument("device couplings must be non-negative");
  if (qubit_levels != 2 && qubit_levels != 3) throw InvalidArgument("device.qubit_levels must be 2 or 3");
  if (photon_cutoff < 1) throw InvalidArgument("device.photon_cutoff must be >= 1");
  if (excitation_cap < 1) throw InvalidArgument("device.excitation_cap must be >= 1");
  for (int k = 0; k < 2; ++k) {
    if (!(t1_us[k] > 0)) throw InvalidArgument("device.t1_us must be positive");
    if (!(ramsey_sigma_ns[k] > 0)) throw InvalidArgument("device.ramsey_sigma_ns must be positive");
  }
}

DeviceParams DeviceParams::reference_device() { return DeviceParams{}; }

std::vector<OccupationLabel> enumerate_basis(const DeviceParams& p, std::optional<int> sector) {
  p.validate();
  const int cap = sector ? *sector : p.excitation_cap;
  if (cap < 0) throw InvalidArgument("excitation sector must be non-negative");
  std::vector<OccupationLabel> labels;
  std::vector<int> photons(static_cast<std::size_t>(p.n_modes), 0);

  // Odometer over site occupations, site 1 most significant.
  auto emit_sites = [&](int q1, int q2) {
    std::fill(photons.begin(), photons.end(), 0);
    while (true) {
      OccupationLabel label{q1, q2, photons};
      const int total = label.excitations();
      if (sector ? total == cap : total <= cap) {
        labels.push_back(label);
        if (labels.size() > p.max_dimension) {
          std::ostringstream msg;
          msg << "basis dimension exceeds configured limit " << p.max_dimension;
          throw InvalidArgument(msg.str());
        }
      }
      int site = p.n_modes - 1;
      while (site >= 0) {
        auto& n = photons[static_cast<std::size_t>(site)];
        if (n < p.photon_cutoff) {
          ++n;
          break;
        }
        n = 0;
        --site;
      }
      if (site < 0) break;
    }
  };
  for (int q1 = 0; q1 < p.qubit_levels; ++q1) {
    for (int q2 = 0; q2 < p.qubit_levels; ++q2) {
      if (q1 + q2 <= cap) emit_sites(q1, q2);
    }
  }
  if (labels.empty()) throw InvalidArgument("empty basis for the requested truncation");
  return labels;
}

HamiltonianModel::HamiltonianModel(const DeviceParams& params, std::optional<int> sector)
    : params_(params), sector_(sector) {
  basis_ = std::make_shared<const Basis>(enumerate_basis(params_, sector_));
  const Basis& b = *basis_;
  const Eigen::Index dim = static_cast<Eigen::Index>(b.size());
  const int n = params_.n_modes;
  static_ = ComplexMatrix::Zero(dim, dim);
  for (auto& m : number_) m = ComplexMatrix::Zero(dim, dim);
  for (auto& m : lowering_) m = ComplexMatrix::Zero(dim, dim);

  auto add_symmetric = [&](Eigen::Index i, Eigen::Index j, double value) {
    static_(i, j) += value;
    static_(j, i) += value;
  };

  for (std::size_t idx = 0; idx < b.size(); ++idx) {
    const auto& s = b.label(idx);
    const auto i = static_cast<Eigen::Index>(idx);
    const std::array<int, 2> q{s.q1, s.q2};
    double diag = 0;
    for (int k = 0; k < 2; ++k) {
      number_[k](i, i) = q[k];
      if (q[k] == 2) diag += params_.anharmonicity[k];
    }
    for (int site = 0; site < n; ++site) diag += params_.nu_f * s.photons[static_cast<std::size_t>(site)];
    static_(i, i) = diag;

    // Hopping a_{site+1}† a_site.
    for (int site = 0; site + 1 < n; ++site) {
      const int from = s.photons[static_cast<std::size_t>(site)];
      const int to = s.photons[static_cast<std::size_t>(site + 1)];
      if (from == 0) continue;
      OccupationLabel t = s;
      t.photons[static_cast<std::size_t>(site)] -= 1;
      t.photons[static_cast<std::size_t>(site + 1)] += 1;
      if (auto j = b.find(t)) {
        add_symmetric(static_cast<Eigen::Index>(*j), i, params_.g_f * std::sqrt(double(from) * (to + 1)));
      }
    }

    // Qubit k lowers into its end site: a_end† b_k.
    for (int k = 0; k < 2; ++k) {
      if (q[k] == 0) continue;
      const std::size_t end_site = k == 0 ? 0 : static_cast<std::size_t>(n - 1);
      const double g = k == 0 ? params_.g_q1f : params_.g_q2f;
      OccupationLabel lowered = s;
      (k == 0 ? lowered.q1 : lowered.q2) -= 1;
      if (auto j = b.find(lowered)) {
        lowering_[k](static_cast<Eigen::Index>(*j), i) = std::sqrt(double(q[k]));
      }
      OccupationLabel t = lowered;
      t.photons[end_site] += 1;
      if (auto j = b.find(t)) {
        add_symmetric(static_cast<Eigen::Index>(*j), i, g * std::sqrt(double(q[k])) * std::sqrt(double(t.photons[end_site])));
      }
    }
  }
}

ComplexMatrix HamiltonianModel::operator()(double nu_q1, double nu_q2) const {
  return static_ + nu_q1 * number_[0] + nu_q2 * number_[1];
}

const ComplexMatrix& HamiltonianModel::qubit_number(int qubit) const {
  if (qubit != 1 && qubit != 2) throw InvalidArgument("qubit index must be 1 or 2");
  return number_[static_cast<std::size_t>(qubit - 1)];
}

const ComplexMatrix& HamiltonianModel::qubit_lowering(int qubit) const {
  if (qubit != 1 && qubit != 2) throw InvalidArgument("qubit index must be 1 or 2");
  return lowering_[static_cast<std::size_t>(qubit - 1)];
}

ComplexMatrix HamiltonianModel::excitation_number() const {
  const Eigen::Index dim = dimension();
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  for (std::size_t i = 0; i < basis_->size(); ++i) {
    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = basis_->label(i).excitations();
  }
  return m;
}

BuiltHamiltonian build_hamiltonian(const DeviceParams& params, double nu_q1, double nu_q2) {
  if (!(nu_q1 > 0 && nu_q2 > 0)) throw InvalidArgument("qubit frequencies must be positive");
  HamiltonianModel model(params);
  BuiltHamiltonian out{model(nu_q1, nu_q2), model.basis()};
  require_hermitian(out.matrix);
  return out;
}

ComplexMatrix DressedBasis::dressing() const {
  ComplexMatrix v(eig.vectors.rows(), eig.vectors.cols());
  for (std::size_t i = 0; i < eigen_index.size(); ++i) v.col(static_cast<Eigen::Index>(i)) = vector(i);
  return v;
}

DressedBasis dress(const ComplexMatrix& hamiltonian) {
  DressedBasis out;
  out.eig = eig_hermitian(hamiltonian);
  const Eigen::Index dim = hamiltonian.rows();
  std::vector<std::tuple<double, Eigen::Index, Eigen::Index>> pairs;
  pairs.reserve(static_cast<std::size_t>(dim * dim));
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index k = 0; k < dim; ++k) pairs.emplace_back(std::norm(out.eig.vectors(i, k)), i, k);
  }
  std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
    if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) > std::get<0>(b);
    return std::tie(std::get<1>(a), std::get<2>(a)) < std::tie(std::get<1>(b), std::get<2>(b));
  });
  const std::size_t n = static_cast<std::size_t>(dim);
  out.eigen_index.assign(n, n);
  out.overlap.assign(n, 0.0);
  std::vector<bool> used(n, false);
  std::size_t assigned = 0;
  for (const auto& [w, i, k] : pairs) {
    const auto ui = static_cast<std::size_t>(i), uk = static_cast<std::size_t>(k);
    if (out.eigen_index[ui] != n || used[uk]) continue;
    out.eigen_index[ui] = uk;
    out.overlap[ui] = w;
    used[uk] = true;
    if (++assigned == n) break;
  }
  // Fix each dressed vector's phase so its bare-label component is real positive.
  for (std::size_t i = 0; i < n; ++i) {
    auto col = out.eig.vectors.col(static_cast<Eigen::Index>(out.eigen_index[i]));
    const Complex c = col(static_cast<Eigen::Index>(i));
    if (std::abs(c) > 0) col *= std::conj(c) / std::abs(c);
  }
  return out;
}

std::vector<FilterMode> filter_normal_modes(const DeviceParams& p) {
  p.validate();
  const int n = p.n_modes;
  Eigen::MatrixXd chain = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    chain(i, i) = p.nu_f;
    if (i + 1 < n) chain(i, i + 1) = chain(i + 1, i) = p.g_f;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(chain);
  std::vector<FilterMode> modes;
  for (int m = 0; m < n; ++m) {
    FilterMode mode;
    mode.frequency = solver.eigenvalues()(m);
    mode.site_amplitudes = solver.eigenvectors().col(m);
    if (mode.site_amplitudes(0) < 0) mode.site_amplitudes *= -1.0;
    mode.end_amplitude_q1 = std::abs(mode.site_amplitudes(0));
    mode.end_amplitude_q2 = std::abs(mode.site_amplitudes(n - 1));
    mode.g_q1 = p.g_q1f * mode.end_amplitude_q1;
    mode.g_q2 = p.g_q2f * mode.end_amplitude_q2;
    modes.push_back(std::move(mode));
  }
  return modes;
}

}  // namespace mmqed
