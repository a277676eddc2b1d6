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

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "cbvqe/error.hpp"
#include "cbvqe/kernels.hpp"

namespace cbvqe::kernels {

namespace {

// coefficient * i^(#Y); the remaining sign depends on the source index.
Complex base_phase(const PauliTerm& term) {
  static constexpr Complex kIPowers[4] = {
      {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
  return term.coefficient * kIPowers[term.y_count() & 3];
}

void check_sizes(std::size_t a, std::size_t b) {
  if (a != b) throw InputError("statevector dimension mismatch");
}

}  // namespace

void apply_sum(const PauliSum& hamiltonian, std::span<const Complex> in,
               std::span<Complex> out) {
  check_sizes(in.size(), out.size());
  check_sizes(in.size(), hamiltonian.dimension());
  const auto terms = hamiltonian.terms();
  const auto n_terms = static_cast<std::int64_t>(terms.size());
  std::vector<Complex> bases(terms.size());
  for (std::size_t t = 0; t < terms.size(); ++t) bases[t] = base_phase(terms[t]);

  const auto dim = static_cast<std::int64_t>(in.size());
  // Gather: out[j] = sum_t phase_t(j ^ x_t) in[j ^ x_t]; no write conflicts.
  // Tiles of kTile outputs with the term loop outside keep reads streaming.
  constexpr std::int64_t kTile = 1024;
  const std::int64_t n_tiles = (dim + kTile - 1) / kTile;
#pragma omp parallel for schedule(static)
  for (std::int64_t tile = 0; tile < n_tiles; ++tile) {
    const std::int64_t lo = tile * kTile;
    const std::int64_t hi = std::min(dim, lo + kTile);
    for (std::int64_t j = lo; j < hi; ++j) out[static_cast<std::size_t>(j)] = Complex{};
    for (std::int64_t t = 0; t < n_terms; ++t) {
      const PauliTerm& term = terms[static_cast<std::size_t>(t)];
      const Complex base = bases[static_cast<std::size_t>(t)];
      for (std::int64_t j = lo; j < hi; ++j) {
        const std::uint64_t i = static_cast<std::uint64_t>(j) ^ term.x_mask;
        const Complex v = base * in[i];
        out[static_cast<std::size_t>(j)] += (std::popcount(term.z_mask & i) & 1) ? -v : v;
      }
    }
  }
}

Complex term_expectation(const PauliTerm& term, std::span<const Complex> psi) {
  const Complex base = base_phase(term);
  const auto dim = static_cast<std::int64_t>(psi.size());
  double re = 0.0;
  double im = 0.0;
#pragma omp parallel for reduction(+ : re, im) schedule(static)
  for (std::int64_t k = 0; k < dim; ++k) {
    const auto i = static_cast<std::uint64_t>(k);
    Complex v = std::conj(psi[i ^ term.x_mask]) * psi[i];
    if (std::popcount(term.z_mask & i) & 1) v = -v;
    re += v.real();
    im += v.imag();
  }
  return base * Complex{re, im};
}

std::vector<double> pauli_expectations(const PauliSum& hamiltonian,
                                       std::span<const Complex> psi) {
  check_sizes(psi.size(), hamiltonian.dimension());
  std::vector<double> out;
  out.reserve(hamiltonian.size());
  for (const auto& term : hamiltonian.terms()) {
    PauliTerm unit = term;
    unit.coefficient = 1.0;
    out.push_back(term_expectation(unit, psi).real());
  }
  return out;
}

Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
  check_sizes(a.size(), b.size());
  const auto dim = static_cast<std::int64_t>(a.size());
  double re = 0.0;
  double im = 0.0;
#pragma omp parallel for reduction(+ : re, im) schedule(static)
  for (std::int64_t k = 0; k < dim; ++k) {
    const Complex v = std::conj(a[static_cast<std::size_t>(k)]) *
                      b[static_cast<std::size_t>(k)];
    re += v.real();
    im += v.imag();
  }
  return {re, im};
}

double norm_squared(std::span<const Complex> psi) {
  const auto dim = static_cast<std::int64_t>(psi.size());
  double total = 0.0;
#pragma omp parallel for reduction(+ : total) schedule(static)
  for (std::int64_t k = 0; k < dim; ++k) {
    total += std::norm(psi[static_cast<std::size_t>(k)]);
  }
  return total;
}

void apply_number_conserving_block(std::span<Complex> psi, int q0, int q1,
                                   double theta, double phi) {
  const std::uint64_t b0 = std::uint64_t{1} << q0;
  const std::uint64_t b1 = std::uint64_t{1} << q1;
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const Complex up = -std::polar(s, phi);
  const Complex down = std::polar(s, -phi);
  const auto dim = static_cast<std::int64_t>(psi.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t k = 0; k < dim; ++k) {
    const auto i = static_cast<std::uint64_t>(k);
    // i has q0 set and q1 clear; its partner swaps the two bits.
    if ((i & b0) == 0 || (i & b1) != 0) continue;
    const std::uint64_t j = i ^ b0 ^ b1;
    const Complex a = psi[i];
    const Complex b = psi[j];
    psi[i] = c * a + up * b;
    psi[j] = down * a + c * b;
  }
}

int thread_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace cbvqe::kernels
