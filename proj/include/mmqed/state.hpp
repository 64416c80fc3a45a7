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

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mmqed/linalg.hpp"

namespace mmqed {

/// Occupation of one tensor-basis element: qubit levels and photon number per
/// filter site (site 1 couples to qubit 1, site n to qubit 2).
struct OccupationLabel {
  int q1 = 0;
  int q2 = 0;
  std::vector<int> photons;

  int excitations() const;
  std::string to_string() const;

  auto operator<=>(const OccupationLabel&) const = default;
  bool operator==(const OccupationLabel&) const = default;
};

/// Ordered, duplicate-free list of occupation labels sharing one site count.
class Basis {
 public:
  explicit Basis(std::vector<OccupationLabel> labels);

  std::size_t size() const { return labels_.size(); }
  int n_sites() const { return n_sites_; }
  const OccupationLabel& label(std::size_t i) const { return labels_.at(i); }
  const std::vector<OccupationLabel>& labels() const { return labels_; }

  std::optional<std::size_t> find(const OccupationLabel& label) const;
  /// Throws InvalidArgument when the label is absent.
  std::size_t index_of(const OccupationLabel& label) const;

  /// Label with the given qubit levels and an empty filter.
  OccupationLabel qubit_label(int q1, int q2) const;

 private:
  std::vector<OccupationLabel> labels_;
  std::map<OccupationLabel, std::size_t> index_;
  int n_sites_ = 0;
};

/// Amplitude vector over an explicit basis.
struct LabeledState {
  ComplexVector amplitudes;
  std::shared_ptr<const Basis> basis;

  static LabeledState basis_state(std::shared_ptr<const Basis> basis, const OccupationLabel& label);

  double norm() const { return amplitudes.norm(); }
  double population(const OccupationLabel& label) const;
  /// Checks vector length against the basis and ‖ψ‖ = 1 within tol.
  void validate(double tol = 1e-9) const;
};

}  // namespace mmqed
