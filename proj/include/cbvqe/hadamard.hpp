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
 * Hadamard-test outcome model and sampler, plus the two-qubit gate overhead
 * of controlling a number-conserving ansatz.
 *
 * Only real parts are modelled: the ancilla reads + with probability
 * (1 + Re<...>)/2 and the estimator is y = 2 p - 1.
 */

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cbvqe/pauli.hpp"
#include "cbvqe/statevec.hpp"

namespace cbvqe {

/// splitmix64 step; derives independent per-replica or per-observable seeds
/// from one user seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

enum class ObservableKind { kOverlap, kHamiltonianCrossTerm };

struct HadamardObservable {
  ObservableKind kind = ObservableKind::kOverlap;
  /// Re<...> being estimated, in [-1, 1].
  double true_value = 0.0;
  /// For overlaps: the basis state i of y_i = Re<phi_q|i>.
  BasisState basis;
  std::string label;
};

/// Builds an observable, clamping |true_value| <= 1 + 1e-12 into [-1, 1].
/// Throws InputError for values further out.
HadamardObservable make_observable(ObservableKind kind, double true_value,
                                   BasisState basis, std::string label = {});

/// Probability of the + outcome, (1 + true_value) / 2.
double outcome_probability(const HadamardObservable& obs);

struct EstimatorSample {
  double y_hat = 0.0;
  double p_hat = 0.0;
};

/// Counts + outcomes over `shots` Bernoulli trials drawn from a generator
/// seeded with `seed`. Throws InputError for shots == 0.
EstimatorSample sample_estimator(const HadamardObservable& obs,
                                 std::uint64_t shots, std::uint64_t seed);

struct GateCostModel {
  int n_qubits = 2;
  int layers = 1;
  /// Gate-count factor of promoting one block to a controlled block.
  double control_factor = 3.0;
};

/// (DN/2 + FD/2 + N) / (DN/2) = 1 + F/N + 2/D. Throws InputError for D < 1,
/// N < 2 or F < 1.
double controlled_overhead(const GateCostModel& model);

/// One overlap observable per basis state in the support of
/// connected_matrix_elements(H, i0) together with i0 itself, ordered by
/// basis index, true_value = Re<phi_q|i>.
std::vector<HadamardObservable> build_observables(const PauliSum& hamiltonian,
                                                  BasisState i0,
                                                  const Statevector& phi_q);

}  // namespace cbvqe
