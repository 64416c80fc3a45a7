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

#include "mmqed/state.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace mmqed {

int OccupationLabel::excitations() const { return q1 + q2 + std::accumulate(photons.begin(), photons.end(), 0); }

std::string OccupationLabel::to_string() const {
  std::ostringstream out;
  out << "|" << q1 << "," << q2 << ";";
  for (std::size_t i = 0; i < photons.size(); ++i) out << (i ? "," : "") << photons[i];
  out << ">";
  return out.str();
}

Basis::Basis(std::vector<OccupationLabel> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw InvalidArgument("basis must contain at least one label");
  n_sites_ = static_cast<int>(labels_.front().photons.size());
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    const auto& label = labels_[i];
    if (static_cast<int>(label.photons.size()) != n_sites_) {
      throw InvalidArgument("basis label " + label.to_string() + " has inconsistent site count");
    }
    if (!index_.emplace(label, i).second) {
      throw InvalidArgument("duplicate basis label " + label.to_string());
    }
  }
}

std::optional<std::size_t> Basis::find(const OccupationLabel& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Basis::index_of(const OccupationLabel& label) const {
  if (auto i = find(label)) return *i;
  throw InvalidArgument("label " + label.to_string() + " not in basis");
}

OccupationLabel Basis::qubit_label(int q1, int q2) const {
  return OccupationLabel{q1, q2, std::vector<int>(static_cast<std::size_t>(n_sites_), 0)};
}

LabeledState LabeledState::basis_state(std::shared_ptr<const Basis> basis, const OccupationLabel& label) {
  LabeledState state;
  state.amplitudes = ComplexVector::Zero(static_cast<Eigen::Index>(basis->size()));
  state.amplitudes(static_cast<Eigen::Index>(basis->index_of(label))) = 1.0;
  state.basis = std::move(basis);
  return state;
}

double LabeledState::population(const OccupationLabel& label) const {
  return std::norm(amplitudes(static_cast<Eigen::Index>(basis->index_of(label))));
}

void LabeledState::validate(double tol) const {
  if (!basis) throw InvalidArgument("state has no basis");
  if (static_cast<std::size_t>(amplitudes.size()) != basis->size()) {
    throw InvalidArgument("state length does not match its basis");
  }
  if (std::abs(norm() - 1.0) > tol) {
    std::ostringstream msg;
    msg << "state norm " << norm() << " deviates from 1";
    throw ContractViolation("norm", msg.str());
  }
}

}  // namespace mmqed
