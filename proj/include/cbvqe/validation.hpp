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
 * Monte Carlo replay of the boosted estimator.
 *
 * Each replica samples every overlap Hadamard test and every Pauli term of
 * <phi_q|H|phi_q> with the shots of the optimal plan, rebuilds the 2x2
 * problem from the estimates and solves it. Pauli terms in a measurement
 * group are drawn independently, which is the covariance-free model the
 * predicted variances assume.
 *
 * Replica r draws from derive_seed(seed, r) only, so results do not depend
 * on the thread count.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cbvqe/analysis.hpp"

namespace cbvqe {

struct ValidationOptions {
  std::uint64_t total_shots = 100000;
  std::uint64_t replicas = 10000;
  std::uint64_t seed = 1;
  /// Allowed |empirical - predicted| / predicted.
  double tolerance = 0.2;
  /// Below this many replicas no pass/fail is assigned.
  std::uint64_t min_replicas = 30;
  /// Replica cost grows as 2^n; larger inputs are rejected.
  int max_qubits = 12;
};

struct VarianceCheck {
  std::string name;
  std::uint64_t shots = 0;
  double predicted = 0.0;
  double empirical = 0.0;
  /// Empty when there are too few replicas to judge.
  std::optional<bool> pass;

  double relative_error() const;
};

struct ValidationSummary {
  std::string label;
  int n_qubits = 0;
  double alpha = 0.0;
  double energy = 0.0;
  std::uint64_t total_shots = 0;
  std::uint64_t replicas = 0;
  std::uint64_t seed = 0;
  double k_hf = 0.0;
  double mean_lambda = 0.0;
  std::vector<VarianceCheck> checks;
  std::vector<std::string> warnings;

  /// False if any judged check failed.
  bool all_passed() const;
};

/// Throws InputError above options.max_qubits or for zero replicas/shots,
/// NumericalError for a degenerate ground state.
ValidationSummary run_validation(const PauliSum& hamiltonian,
                                 const ValidationOptions& options,
                                 const AnalysisOptions& analysis = {});

/// Unbiased sample variance, two-pass.
double sample_variance(const std::vector<double>& values);

}  // namespace cbvqe
