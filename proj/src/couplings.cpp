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

#include "mmqed/couplings.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mmqed {

namespace {

void require_outside_band(const DeviceParams& p, double nu) {
  const auto modes = filter_normal_modes(p);
  const double margin = std::max(p.g_q1f, p.g_q2f);
  if (nu > modes.front().frequency - margin && nu < modes.back().frequency + margin) {
    std::ostringstream msg;
    msg << "qubit frequency " << nu << " GHz lies inside the filter band [" << modes.front().frequency << ", "
        << modes.back().frequency << "] GHz (margin " << margin << ")";
    throw InvalidArgument(msg.str());
  }
}

// Splitting of the two most qubit-like single-excitation eigenstates.
double qubit_branch_gap(const HamiltonianModel& sector1, double nu_q1, double nu_q2) {
  const auto eig = eig_hermitian(sector1(nu_q1, nu_q2));
  const Basis& b = *sector1.basis();
  const auto i1 = static_cast<Eigen::Index>(b.index_of(b.qubit_label(1, 0)));
  const auto i2 = static_cast<Eigen::Index>(b.index_of(b.qubit_label(0, 1)));
  Eigen::Index best = -1, second = -1;
  double w_best = -1, w_second = -1;
  for (Eigen::Index k = 0; k < eig.vectors.cols(); ++k) {
    const double w = std::norm(eig.vectors(i1, k)) + std::norm(eig.vectors(i2, k));
    if (w > w_best) {
      second = best;
      w_second = w_best;
      best = k;
      w_best = w;
    } else if (w > w_second) {
      second = k;
      w_second = w;
    }
  }
  if (w_second < 0.5) {
    std::ostringstream msg;
    msg << "qubit-like branch overlap " << w_second << " < 0.5; center too close to the filter band";
    throw InvalidArgument(msg.str());
  }
  return std::abs(eig.values(best) - eig.values(second));
}

}  // namespace

double mean_detuning(const DeviceParams& p, double nu_q1, double nu_q2) { return (nu_q1 + nu_q2 - 2.0 * p.nu_f) / 2.0; }

double approx_j(const DeviceParams& p, double delta) {
  if (delta == 0.0) throw InvalidArgument("approx_j is singular at zero detuning");
  const double g_q = 0.5 * (p.g_q1f + p.g_q2f);
  // (g_Q²/g_F)(g_F/Δ)^n written to stay finite for g_F = 0.
  return g_q * g_q * std::pow(p.g_f, p.n_modes - 1) / std::pow(delta, p.n_modes);
}

double approx_xi(const DeviceParams& p, double delta) {
  const double j = approx_j(p, delta);
  return 4.0 * p.n_modes * j * j / delta;
}

EffectiveCouplings approx_couplings(const DeviceParams& p, double nu_q1, double nu_q2) {
  const double delta = mean_detuning(p, nu_q1, nu_q2);
  return {approx_j(p, delta), approx_xi(p, delta), delta};
}

double numeric_j(const DeviceParams& p, double nu_q_center) {
  require_outside_band(p, nu_q_center);
  const HamiltonianModel sector1(p, 1);
  auto gap = [&](double nu_q2) { return qubit_branch_gap(sector1, nu_q_center, nu_q2); };

  // The splitting is a hyperbola in ν_Q2 centered within a few Lamb shifts of
  // the center; golden-section search on a bracket wide enough for that.
  const double half_width = std::min(0.1, 0.5 * std::abs(nu_q_center - filter_normal_modes(p).front().frequency));
  double a = nu_q_center - half_width, b = nu_q_center + half_width;
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a), d = a + invphi * (b - a);
  double fc = gap(c), fd = gap(d);
  for (int iter = 0; iter < 200 && b - a > 1e-13; ++iter) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = gap(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = gap(d);
    }
  }
  const double minimum = std::min({fc, fd, gap(0.5 * (a + b))});
  if (a <= nu_q_center - half_width + 1e-9 || b >= nu_q_center + half_width - 1e-9) {
    throw ContractViolation("avoided crossing", "minimum splitting at the edge of the search bracket");
  }
  return 0.5 * minimum;
}

double numeric_xi(const DeviceParams& p, double nu_q1, double nu_q2) {
  if (p.excitation_cap < 2) throw InvalidArgument("numeric_xi requires excitation_cap >= 2");
  require_outside_band(p, nu_q1);
  require_outside_band(p, nu_q2);
  const HamiltonianModel model(p);
  const auto dressed = dress(model(nu_q1, nu_q2));
  const Basis& b = *model.basis();
  double energy[2][2];
  for (int a = 0; a < 2; ++a) {
    for (int c = 0; c < 2; ++c) {
      const std::size_t i = b.index_of(b.qubit_label(a, c));
      if (dressed.overlap[i] < 0.5) {
        std::ostringstream msg;
        msg << "ambiguous dressed assignment for " << b.label(i).to_string() << " (overlap " << dressed.overlap[i]
            << ")";
        throw InvalidArgument(msg.str());
      }
      energy[a][c] = dressed.energy(i);
    }
  }
  return (energy[1][1] + energy[0][0] - energy[1][0] - energy[0][1]) / 4.0;
}

}  // namespace mmqed
