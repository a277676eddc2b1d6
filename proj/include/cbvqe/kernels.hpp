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
 * Amplitude-level kernels over dense statevectors.
 *
 * The functions in cbvqe::kernels are OpenMP-parallel over basis indices.
 * cbvqe::kernels::serial holds straightforward single-threaded versions
 * written in a different loop order (scatter instead of gather); they are
 * kept as the reference the parallel kernels are tested and benchmarked
 * against.
 */

#pragma once

#include <span>
#include <vector>

#include "cbvqe/pauli.hpp"

namespace cbvqe::kernels {

/// out = H in. `in` and `out` must not alias.
void apply_sum(const PauliSum& hamiltonian, std::span<const Complex> in,
               std::span<Complex> out);

/// <psi|term|psi>, coefficient included.
Complex term_expectation(const PauliTerm& term, std::span<const Complex> psi);

/// <psi|P_t|psi> for every term with its coefficient stripped.
std::vector<double> pauli_expectations(const PauliSum& hamiltonian,
                                       std::span<const Complex> psi);

/// <a|b>
Complex inner(std::span<const Complex> a, std::span<const Complex> b);

double norm_squared(std::span<const Complex> psi);

/// Rotation by (theta, phi) inside span{|01>, |10>} of qubits (q0, q1);
/// |00> and |11> are left alone.
void apply_number_conserving_block(std::span<Complex> psi, int q0, int q1,
                                   double theta, double phi);

namespace serial {

void apply_sum(const PauliSum& hamiltonian, std::span<const Complex> in,
               std::span<Complex> out);
Complex term_expectation(const PauliTerm& term, std::span<const Complex> psi);
std::vector<double> pauli_expectations(const PauliSum& hamiltonian,
                                       std::span<const Complex> psi);
Complex inner(std::span<const Complex> a, std::span<const Complex> b);
double norm_squared(std::span<const Complex> psi);
void apply_number_conserving_block(std::span<Complex> psi, int q0, int q1,
                                   double theta, double phi);

}  // namespace serial

/// Number of OpenMP threads the parallel kernels will use (1 without OpenMP).
int thread_count();

}  // namespace cbvqe::kernels
