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

#include <cstddef>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "mmqed/hamiltonian.hpp"
#include "mmqed/transmon.hpp"

namespace mmqed {

enum class SweepAxis { kFrequency, kFlux };

struct SweepSpec {
  SweepAxis axis = SweepAxis::kFrequency;
  int qubit = 1;                        // swept qubit, 1 or 2
  std::vector<double> grid;             // GHz or Φ0, ascending
  double other_qubit_frequency = 5.0;   // GHz
  int sector = 1;                       // excitation block
  TransmonParams transmon;              // used when axis is kFlux
};

/// Eigenvalues of one excitation block across a parameter grid. Columns are
/// branches followed by maximum eigenvector overlap with the previous point,
/// so a branch keeps its identity through avoided crossings. Column order at
/// the first point is ascending energy.
struct SpectrumTable {
  std::string parameter;
  std::vector<double> grid;
  std::vector<double> swept_frequency;             // ν_Q of the swept qubit at each point
  std::vector<std::vector<double>> eigenvalues;    // [point][branch], GHz
  std::vector<std::vector<double>> overlaps;       // [point][branch], weight on the probe state

  std::size_t branch_count() const { return eigenvalues.empty() ? 0 : eigenvalues.front().size(); }
  void write_csv(std::ostream& out) const;
};

/// Probe state is the swept qubit's bare excited state.
SpectrumTable eigen_sweep(const DeviceParams& p, const SweepSpec& spec);

struct AvoidedCrossing {
  double location = 0;  // sweep parameter
  double gap = 0;       // GHz
};

/// Minimum separation of two branches. The squared separation is fitted by a
/// parabola through the discrete minimum and its neighbours (exact for a
/// two-level crossing). Throws if the minimum sits on the grid edge.
AvoidedCrossing find_avoided_crossing(const SpectrumTable& table, std::size_t branch_a, std::size_t branch_b);

struct ExchangeRow {
  double center = 0;         // ν_Q1 = ν_Q2 center, GHz
  double delta = 0;          // center − ν_F, GHz
  double j_numeric = 0;      // GHz
  double j_closed_form = 0;  // (g_Q²/g_F)(g_F/Δ)^n, GHz
  double j_single_mode = 0;  // g_Q²/Δ reference law, GHz
};

std::vector<ExchangeRow> exchange_scan(const DeviceParams& p, std::span<const double> centers, int threads = 0);

void write_exchange_csv(std::ostream& out, std::span<const ExchangeRow> rows);

/// Least-squares slope of log|y| against log|x|.
double log_log_slope(std::span<const double> x, std::span<const double> y);

}  // namespace mmqed
