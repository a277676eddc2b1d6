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

// OpenMP kernels against the serial reference on fixture Hamiltonians.

#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "cbvqe/kernels.hpp"
#include "cbvqe/pauli.hpp"

namespace {

using cbvqe::Complex;

const char* kFixtures[] = {"h2_sto3g", "h2_631g_8q", "lih_sto3g_10q", "h2_ccpvdz_12q"};

struct Setup {
  cbvqe::PauliSum h;
  std::vector<Complex> psi;
  std::vector<Complex> out;
};

Setup make_setup(int which) {
  Setup s{cbvqe::load_hamiltonian(std::string(CBVQE_FIXTURE_DIR) + "/" +
                                  kFixtures[which] + ".json"),
          {},
          {}};
  const std::size_t dim = std::size_t{1} << s.h.n_qubits();
  std::mt19937_64 rng(7);
  std::normal_distribution<double> n;
  s.psi.resize(dim);
  for (auto& z : s.psi) z = Complex(n(rng), n(rng));
  s.out.resize(dim);
  return s;
}

void label(benchmark::State& state, const Setup& s) {
  state.SetLabel(std::string(kFixtures[state.range(0)]) + " terms=" +
                 std::to_string(s.h.terms().size()));
}

void BM_ApplySum_Omp(benchmark::State& state) {
  Setup s = make_setup(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    cbvqe::kernels::apply_sum(s.h, s.psi, s.out);
    benchmark::DoNotOptimize(s.out.data());
  }
  label(state, s);
}

void BM_ApplySum_Serial(benchmark::State& state) {
  Setup s = make_setup(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    cbvqe::kernels::serial::apply_sum(s.h, s.psi, s.out);
    benchmark::DoNotOptimize(s.out.data());
  }
  label(state, s);
}

void BM_Expectations_Omp(benchmark::State& state) {
  Setup s = make_setup(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(cbvqe::kernels::pauli_expectations(s.h, s.psi));
  label(state, s);
}

void BM_Expectations_Serial(benchmark::State& state) {
  Setup s = make_setup(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(cbvqe::kernels::serial::pauli_expectations(s.h, s.psi));
  }
  label(state, s);
}

BENCHMARK(BM_ApplySum_Omp)->DenseRange(0, 3)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ApplySum_Serial)->DenseRange(0, 3)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Expectations_Omp)->DenseRange(0, 3)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Expectations_Serial)->DenseRange(0, 3)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
