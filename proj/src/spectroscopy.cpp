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

#include "mmqed/spectroscopy.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <tuple>

#include "mmqed/couplings.hpp"
#include "mmqed/parallel.hpp"

namespace mmqed {

namespace {

// Greedy bijection between previous branches and new eigenvectors.
std::vector<Eigen::Index> match_branches(const ComplexMatrix& previous, const ComplexMatrix& current) {
  const Eigen::Index n = previous.cols();
  const ComplexMatrix overlap = previous.adjoint() * current;
  std::vector<std::tuple<double, Eigen::Index, Eigen::Index>> pairs;
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index k = 0; k < n; ++k) pairs.emplace_back(std::norm(overlap(a, k)), a, k);
  }
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const auto& x, const auto& y) { return std::get<0>(x) > std::get<0>(y); });
  std::vector<Eigen::Index> assignment(static_cast<std::size_t>(n), -1);
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  for (const auto& [w, a, k] : pairs) {
    if (assignment[static_cast<std::size_t>(a)] >= 0 || used[static_cast<std::size_t>(k)]) continue;
    assignment[static_cast<std::size_t>(a)] = k;
    used[static_cast<std::size_t>(k)] = true;
  }
  return assignment;
}

}  // namespace

void SpectrumTable::write_csv(std::ostream& out) const {
  out << std::setprecision(12);
  out << parameter << ",nu_q";
  for (std::size_t b = 0; b < branch_count(); ++b) out << ",E" << b;
  for (std::size_t b = 0; b < branch_count(); ++b) out << ",w" << b;
  out << "\n";
  for (std::size_t k = 0; k < grid.size(); ++k) {
    out << grid[k] << "," << swept_frequency[k];
    for (double e : eigenvalues[k]) out << "," << e;
    for (double w : overlaps[k]) out << "," << w;
    out << "\n";
  }
}

SpectrumTable eigen_sweep(const DeviceParams& p, const SweepSpec& spec) {
  if (spec.qubit != 1 && spec.qubit != 2) throw InvalidArgument("sweep qubit must be 1 or 2");
  if (!std::is_sorted(spec.grid.begin(), spec.grid.end())) throw InvalidArgument("sweep grid must be sorted");
  if (spec.axis == SweepAxis::kFlux) spec.transmon.validate();
  const HamiltonianModel model(p, spec.sector);
  const Basis& basis = *model.basis();
  const OccupationLabel probe = spec.qubit == 1 ? basis.qubit_label(1, 0) : basis.qubit_label(0, 1);
  const auto probe_index = basis.find(probe);

  SpectrumTable table;
  table.parameter = spec.axis == SweepAxis::kFlux ? "flux_q" + std::to_string(spec.qubit)
                                                  : "nu_q" + std::to_string(spec.qubit);
  table.grid = spec.grid;
  const std::size_t points = spec.grid.size();
  table.swept_frequency.resize(points);
  std::vector<EigenSystem> systems(points);
  parallel_for(points, [&](std::size_t k) {
    const double nu = spec.axis == SweepAxis::kFlux ? transmon_frequency(spec.transmon, spec.grid[k]) : spec.grid[k];
    table.swept_frequency[k] = nu;
    const double nu1 = spec.qubit == 1 ? nu : spec.other_qubit_frequency;
    const double nu2 = spec.qubit == 2 ? nu : spec.other_qubit_frequency;
    systems[k] = eig_hermitian(model(nu1, nu2));
  });

  // Branch tracking is sequential so the assembly is deterministic.
  const Eigen::Index dim = model.dimension();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(dim));
  std::iota(order.begin(), order.end(), 0);
  ComplexMatrix previous;
  for (std::size_t k = 0; k < points; ++k) {
    const auto& sys = systems[k];
    if (k > 0) {
      const auto assignment = match_branches(previous, sys.vectors);
      for (std::size_t b = 0; b < order.size(); ++b) order[b] = assignment[b];
    }
    std::vector<double> values, weights;
    previous.resize(dim, dim);
    for (std::size_t b = 0; b < order.size(); ++b) {
      const Eigen::Index col = order[b];
      values.push_back(sys.values(col));
      weights.push_back(probe_index ? std::norm(sys.vectors(static_cast<Eigen::Index>(*probe_index), col)) : 0.0);
      previous.col(static_cast<Eigen::Index>(b)) = sys.vectors.col(col);
    }
    table.eigenvalues.push_back(std::move(values));
    table.overlaps.push_back(std::move(weights));
  }
  return table;
}

AvoidedCrossing find_avoided_crossing(const SpectrumTable& table, std::size_t branch_a, std::size_t branch_b) {
  const std::size_t n = table.grid.size();
  if (n < 3) throw InvalidArgument("avoided-crossing search needs at least three grid points");
  if (branch_a >= table.branch_count() || branch_b >= table.branch_count() || branch_a == branch_b) {
    throw InvalidArgument("invalid branch pair");
  }
  std::vector<double> sep2(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double d = table.eigenvalues[k][branch_a] - table.eigenvalues[k][branch_b];
    sep2[k] = d * d;
  }
  const auto k = static_cast<std::size_t>(std::min_element(sep2.begin(), sep2.end()) - sep2.begin());
  if (k == 0 || k + 1 == n) throw InvalidArgument("minimum separation at grid edge; widen the sweep");

  const double x0 = table.grid[k - 1], x1 = table.grid[k], x2 = table.grid[k + 1];
  const double y0 = sep2[k - 1], y1 = sep2[k], y2 = sep2[k + 1];
  // Parabola through three (possibly non-uniform) points.
  const double d01 = (y1 - y0) / (x1 - x0), d12 = (y2 - y1) / (x2 - x1);
  const double curvature = (d12 - d01) / (x2 - x0);
  AvoidedCrossing out{x1, std::sqrt(y1)};
  if (curvature > 0) {
    const double slope = d01 - curvature * (x0 + x1);
    const double vertex = -slope / (2.0 * curvature);
    if (vertex >= x0 && vertex <= x2) {
      const double value = y1 + d01 * (vertex - x1) + curvature * (vertex - x0) * (vertex - x1);
      out = {vertex, std::sqrt(std::max(0.0, std::min(value, y1)))};
    }
  }
  return out;
}

std::vector<ExchangeRow> exchange_scan(const DeviceParams& p, std::span<const double> centers, int threads) {
  std::vector<ExchangeRow> rows(centers.size());
  const double g_q = 0.5 * (p.g_q1f + p.g_q2f);
  parallel_for(
      centers.size(),
      [&](std::size_t i) {
        const double c = centers[i];
        const double delta = c - p.nu_f;
        rows[i] = {c, delta, numeric_j(p, c), approx_j(p, delta), g_q * g_q / delta};
      },
      threads);
  return rows;
}

void write_exchange_csv(std::ostream& out, std::span<const ExchangeRow> rows) {
  out << std::setprecision(12) << "center_ghz,delta_ghz,j_numeric_ghz,j_closed_form_ghz,j_single_mode_ghz\n";
  for (const auto& r : rows) {
    out << r.center << "," << r.delta << "," << r.j_numeric << "," << r.j_closed_form << "," << r.j_single_mode
        << "\n";
  }
}

double log_log_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw InvalidArgument("slope fit needs matching series of length >= 2");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(std::abs(x[i])), ly = std::log(std::abs(y[i]));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace mmqed
