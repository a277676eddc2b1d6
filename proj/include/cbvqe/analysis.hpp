// Copyright 2026 The cbvqe Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * End-to-end cost comparison for one Hamiltonian: exact ground state,
 * reference determinant, deflated quantum state, K-factors for boosted and
 * conventional estimation, measurement counts at a target precision.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "cbvqe/pauli.hpp"
#include "cbvqe/shots.hpp"
#include "cbvqe/statevec.hpp"

namespace cbvqe {

struct AnalysisOptions {
  /// Target standard deviation of the energy estimate (Hartree).
  double epsilon = 1e-3;
  /// Reference determinant; chosen from the ground state when unset.
  std::optional<BasisState> reference;
  GroundStateOptions ground;
};

/// Exact-oracle inputs to the cost model. `phi_q` is empty when the ground
/// state is the reference state itself.
struct BoostedModel {
  BasisState reference;
  double energy = 0.0;
  double gap = 0.0;
  double alpha = 0.0;
  Statevector ground_state{1};
  std::optional<Statevector> phi_q;
  /// Re<i|H|i0> over the coupling support.
  BasisMap cross_elements;
  /// y_i = Re<phi_q|i> over the coupling support and i0.
  BasisMap overlaps;
  TermGroups groups;
  double k_prime = 0.0;
};

/// Throws NumericalError for a degenerate ground state.
BoostedModel prepare_boosted_model(const PauliSum& hamiltonian,
                                   const AnalysisOptions& options);

struct AnalysisReport {
  std::string label;
  int n_qubits = 0;
  BasisState reference;
  bool classically_solved = false;
  double alpha = 0.0;
  double energy = 0.0;
  double gap = 0.0;
  double epsilon = 0.0;
  double k_vqe = 0.0;
  double k_hf = 0.0;
  double k_prime = 0.0;
  std::uint64_t m_vqe = 0;
  std::uint64_t m_hfvqe = 0;
  /// Empty when K_hf == 0.
  std::optional<double> speedup;
  std::optional<double> asymptotic_speedup;
  std::optional<double> asymptotic_ratio;
  /// Unit-variance approximation of the speedup.
  std::optional<double> bounded_speedup;
  std::size_t n_terms = 0;
  std::size_t n_groups = 0;
  std::size_t n_overlaps = 0;
  double one_norm = 0.0;
  double coupling_one_norm = 0.0;
  double coupling_matrix_element_sum = 0.0;
  /// Two-qubit gate factor for a depth-N ansatz with F = 3.
  double controlled_overhead = 0.0;
};

AnalysisReport analyze(const PauliSum& hamiltonian,
                       const AnalysisOptions& options);

}  // namespace cbvqe
