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

#include "cbvqe/hadamard.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "cbvqe/error.hpp"

namespace cbvqe {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

HadamardObservable make_observable(ObservableKind kind, double true_value,
                                   BasisState basis, std::string label) {
  if (!std::isfinite(true_value) || std::abs(true_value) > 1.0 + 1e-12) {
    throw InputError("Hadamard-test value must lie in [-1, 1]");
  }
  return {kind, std::clamp(true_value, -1.0, 1.0), basis, std::move(label)};
}

double outcome_probability(const HadamardObservable& obs) {
  return std::clamp(0.5 * (1.0 + obs.true_value), 0.0, 1.0);
}

EstimatorSample sample_estimator(const HadamardObservable& obs,
                                 std::uint64_t shots, std::uint64_t seed) {
  if (shots == 0) throw InputError("sample_estimator needs at least one shot");
  std::mt19937_64 rng(seed);
  std::binomial_distribution<std::uint64_t> plus(shots,
                                                 outcome_probability(obs));
  const double p_hat =
      static_cast<double>(plus(rng)) / static_cast<double>(shots);
  return {2.0 * p_hat - 1.0, p_hat};
}

double controlled_overhead(const GateCostModel& model) {
  if (model.layers < 1) {
    throw InputError("controlled overhead is undefined for zero layers");
  }
  if (model.n_qubits < 2) throw InputError("gate-cost model needs N >= 2");
  if (model.control_factor < 1.0) {
    throw InputError("control factor F must be at least 1");
  }
  const double n = model.n_qubits;
  const double d = model.layers;
  return 1.0 + model.control_factor / n + 2.0 / d;
}

std::vector<HadamardObservable> build_observables(const PauliSum& hamiltonian,
                                                  BasisState i0,
                                                  const Statevector& phi_q) {
  if (hamiltonian.n_qubits() != phi_q.n_qubits()) {
    throw InputError("Hamiltonian and state qubit counts differ");
  }
  std::set<BasisState> support{i0};
  for (const auto& [j, value] : connected_matrix_elements(hamiltonian, i0)) {
    support.insert(j);
  }
  std::vector<HadamardObservable> out;
  out.reserve(support.size());
  for (const BasisState s : support) {
    out.push_back(make_observable(ObservableKind::kOverlap,
                                  phi_q[s.bits].real(), s,
                                  "y[" + to_bitstring(s, phi_q.n_qubits()) +
                                      "]"));
  }
  return out;
}

}  // namespace cbvqe
