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

#include "mmqed/transmon.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mmqed {

namespace {

RealVector charge_basis_spectrum(const TransmonParams& p, double e_j, int cutoff) {
  const int dim = 2 * cutoff + 1;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const double n = static_cast<double>(i - cutoff) - p.n_g;
    h(i, i) = 4.0 * p.e_c * n * n;
    if (i + 1 < dim) {
      h(i, i + 1) = -e_j / 2.0;
      h(i + 1, i) = -e_j / 2.0;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

}  // namespace

void TransmonParams::validate() const {
  if (!(e_c > 0)) throw InvalidArgument("transmon.e_c must be positive");
  if (!(e_j_max > 0)) throw InvalidArgument("transmon.e_j_max must be positive");
  if (charge_cutoff < 10) throw InvalidArgument("transmon.charge_cutoff must be >= 10");
}

RealVector transmon_levels(const TransmonParams& p, double e_j, int count) {
  p.validate();
  if (!(e_j >= 0)) throw InvalidArgument("E_J must be non-negative");
  if (count < 1 || count > 2 * p.charge_cutoff + 1) throw InvalidArgument("level count out of range");

  const RealVector base = charge_basis_spectrum(p, e_j, p.charge_cutoff);
  const RealVector wider = charge_basis_spectrum(p, e_j, p.charge_cutoff + 5);
  RealVector levels(count);
  for (int k = 0; k < count; ++k) {
    levels(k) = base(k) - base(0);
    const double reference = wider(k) - wider(0);
    const double scale = std::max(std::abs(reference), p.e_c);
    if (std::abs(levels(k) - reference) > 1e-9 * scale) {
      std::ostringstream msg;
      msg << "charge_cutoff " << p.charge_cutoff << " not converged for level " << k << " at E_J = " << e_j;
      throw InvalidArgument(msg.str());
    }
  }
  return levels;
}

double flux_to_ej(const TransmonParams& p, double phi) {
  return p.e_j_max * std::abs(std::cos(std::numbers::pi * phi));
}

double transmon_frequency(const TransmonParams& p, double phi) {
  return transmon_levels(p, flux_to_ej(p, phi), 2)(1);
}

double transmon_anharmonicity(const TransmonParams& p, double phi) {
  const RealVector levels = transmon_levels(p, flux_to_ej(p, phi), 3);
  return (levels(2) - levels(1)) - levels(1);
}

std::pair<double, double> frequency_band(const TransmonParams& p) {
  return {transmon_frequency(p, 0.5 - 1e-6), transmon_frequency(p, 0.0)};
}

double frequency_to_flux(const TransmonParams& p, double target_nu) {
  const auto [low, high] = frequency_band(p);
  if (!(target_nu >= low && target_nu <= high)) {
    std::ostringstream msg;
    msg << "target frequency " << target_nu << " GHz outside achievable band [" << low << ", " << high << "] GHz";
    throw InvalidArgument(msg.str());
  }
  // ν01 decreases monotonically on [0, 0.5).
  double lo = 0.0, hi = 0.5 - 1e-6;
  for (int iter = 0; iter < 200 && hi - lo > 1e-15; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (transmon_frequency(p, mid) > target_nu) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double phi = 0.5 * (lo + hi);
  if (std::abs(transmon_frequency(p, phi) - target_nu) >= 1e-6) {
    throw ContractViolation("flux inversion", "bisection did not reach 1 kHz accuracy");
  }
  return phi;
}

}  // namespace mmqed
