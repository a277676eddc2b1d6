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

// Single-threaded reference kernels. Each term is applied basis state by
// basis state through apply_term_to_basis and scattered into the output.

#include <algorithm>
#include <cmath>

#include "cbvqe/error.hpp"
#include "cbvqe/kernels.hpp"

namespace cbvqe::kernels::serial {

void apply_sum(const PauliSum& hamiltonian, std::span<const Complex> in,
               std::span<Complex> out) {
  if (in.size() != out.size() || in.size() != hamiltonian.dimension()) {
    throw InputError("statevector dimension mismatch");
  }
  std::fill(out.begin(), out.end(), Complex{0.0, 0.0});
  for (const auto& term : hamiltonian.terms()) {
    for (std::uint64_t i = 0; i < in.size(); ++i) {
      const auto [phase, j] = apply_term_to_basis(term, BasisState{i});
      out[j.bits] += phase * in[i];
    }
  }
}

Complex term_expectation(const PauliTerm& term, std::span<const Complex> psi) {
  Complex total{0.0, 0.0};
  for (std::uint64_t i = 0; i < psi.size(); ++i) {
    const auto [phase, j] = apply_term_to_basis(term, BasisState{i});
    total += std::conj(psi[j.bits]) * phase * psi[i];
  }
  return total;
}

std::vector<double> pauli_expectations(const PauliSum& hamiltonian,
                                       std::span<const Complex> psi) {
  std::vector<double> out;
  for (const auto& term : hamiltonian.terms()) {
    PauliTerm unit = term;
    unit.coefficient = 1.0;
    out.push_back(term_expectation(unit, psi).real());
  }
  return out;
}

Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
  Complex total{0.0, 0.0};
  for (std::size_t k = 0; k < a.size(); ++k) total += std::conj(a[k]) * b[k];
  return total;
}

double norm_squared(std::span<const Complex> psi) {
  double total = 0.0;
  for (const auto& v : psi) total += std::norm(v);
  return total;
}

void apply_number_conserving_block(std::span<Complex> psi, int q0, int q1,
                                   double theta, double phi) {
  const std::uint64_t b0 = std::uint64_t{1} << q0;
  const std::uint64_t b1 = std::uint64_t{1} << q1;
  const Complex e = std::polar(1.0, phi);
  for (std::uint64_t i = 0; i < psi.size(); ++i) {
    if ((i & b0) == 0 || (i & b1) != 0) continue;
    const std::uint64_t j = i ^ b0 ^ b1;
    const Complex a = psi[i];
    const Complex b = psi[j];
    psi[i] = std::cos(theta) * a - e * std::sin(theta) * b;
    psi[j] = std::conj(e) * std::sin(theta) * a + std::cos(theta) * b;
  }
}

}  // namespace cbvqe::kernels::serial
