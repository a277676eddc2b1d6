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
 * Dense statevectors: exact ground states, expectation values, Pauli-term
 * variances, basis overlaps, deflation against a reference basis state, and
 * a brick-layer ansatz of number-conserving two-qubit blocks.
 */

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "cbvqe/pauli.hpp"

namespace cbvqe {

class Statevector {
 public:
  /// |0...0> on n_qubits.
  explicit Statevector(int n_qubits);
  Statevector(int n_qubits, std::vector<Complex> amplitudes);

  int n_qubits() const { return n_qubits_; }
  std::uint64_t dimension() const { return amplitudes_.size(); }
  std::span<const Complex> amplitudes() const { return amplitudes_; }
  std::span<Complex> amplitudes() { return amplitudes_; }
  Complex operator[](std::uint64_t index) const { return amplitudes_[index]; }
  Complex& operator[](std::uint64_t index) { return amplitudes_[index]; }

  double norm() const;
  /// Throws NumericalError on a zero vector.
  void normalize();

 private:
  int n_qubits_;
  std::vector<Complex> amplitudes_;
};

Statevector basis_statevector(BasisState i, int n_qubits);

/// H as a dense matrix, assembled column by column from basis actions.
Eigen::MatrixXcd dense_matrix(const PauliSum& hamiltonian);

inline constexpr int kDefaultQubitCap = 20;

/// Qubit cap from CBVQE_MAX_QUBITS, else kDefaultQubitCap.
int qubit_cap_from_env();

struct GroundStateOptions {
  int max_qubits = kDefaultQubitCap;
  /// Full dense diagonalization at or below this size, Krylov above.
  int dense_max_qubits = 8;
  bool force_iterative = false;
  double degeneracy_threshold = 1e-9;
  /// Krylov convergence: residual <= tolerance * (one-norm incl. identity).
  double tolerance = 1e-10;
  int max_basis = 64;
  int max_iterations = 20000;
  std::uint64_t seed = 0x5eed;
};

struct GroundStateResult {
  double energy = 0.0;
  Statevector state{1};
  /// Difference between the two lowest eigenvalues.
  double gap = 0.0;
  bool degenerate = false;
  /// ||H psi - E psi||
  double residual = 0.0;
  bool iterative = false;
};

/// Lowest eigenpair of H. Throws InputError past the qubit cap and
/// NumericalError if the Krylov solver does not converge.
GroundStateResult exact_ground_state(const PauliSum& hamiltonian,
                                     const GroundStateOptions& options = {});

/// Real <psi|H|psi>. Throws InputError on dimension mismatch.
double expectation(const PauliSum& hamiltonian, const Statevector& psi);

/// 1 - <P>^2 for a Pauli string with unit-magnitude coefficient.
double term_variance(const PauliTerm& pauli, const Statevector& psi);

/// Per-term 1 - <P_t>^2 with coefficients stripped, indexed like terms().
std::vector<double> term_variances(const PauliSum& hamiltonian,
                                   const Statevector& psi);

/// y_i = Re(<psi|i>) for all i with nonzero amplitude, or for the states in
/// `support` only.
std::map<BasisState, double> overlaps_with_basis(
    const Statevector& psi,
    std::optional<std::span<const BasisState>> support = std::nullopt);

/// Ground state split into its reference-state weight and the normalized
/// orthogonal remainder. phi_q is empty when the ground state is the
/// reference state itself (the classically solved case).
struct Deflation {
  double alpha = 0.0;
  std::optional<Statevector> phi_q;

  bool classically_solved() const { return !phi_q.has_value(); }
};

/// Fixes the global phase so <i0|gs> >= 0, then
/// phi_q = (gs - alpha |i0>) / sqrt(1 - alpha^2).
Deflation deflate_quantum_state(const Statevector& ground_state,
                                BasisState i0);

/// Largest-|amplitude| basis state, restricted to Hamming weight
/// `n_electrons` when given and that sector has weight; ties go to the
/// smallest index.
BasisState select_reference_state(const Statevector& ground_state,
                                  std::optional<int> n_electrons);

// Ansatz.

struct BlockAngles {
  double theta = 0.0;
  double phi = 0.0;
};

/// Block on qubits (low, low + 1) in a given layer.
struct BlockSite {
  int layer = 0;
  int low = 0;
};

/// Brick-layer placement: even layers start at qubit 0, odd layers at 1.
std::vector<BlockSite> brick_layout(int n_qubits, int layers);

struct AnsatzSpec {
  int n_qubits = 2;
  int layers = 0;
  BasisState initial;
  /// One entry per site of brick_layout(n_qubits, layers), same order.
  std::vector<BlockAngles> angles;
};

/// Basis preparation of `initial` followed by the block layers.
Statevector apply_ansatz(const AnsatzSpec& spec);

struct BlockCount {
  std::size_t total = 0;
  std::size_t coupling = 0;
};

/// Blocks whose two qubits start with different occupations in `initial`.
/// For initial = |0^{N-k} 1^k> these are the blocks straddling qubits
/// (k-1, k), one every other layer.
BlockCount count_coupling_blocks(const AnsatzSpec& spec);

}  // namespace cbvqe
