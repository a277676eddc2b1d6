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
 * Pauli strings in x/z bit-mask form, weighted sums of them (qubit
 * Hamiltonians), their action on computational basis states, and
 * qubitwise-commuting measurement groups.
 *
 * Bit convention: qubit q is bit q of a mask or basis index, i.e. qubit 0 is
 * the least-significant bit. A Y on qubit q sets bit q in both masks.
 */

#pragma once

#include <bit>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cbvqe {

using Complex = std::complex<double>;

inline constexpr int kMaxQubits = 63;
inline constexpr double kDefaultDropThreshold = 1e-12;

/// Computational basis state |bits>, qubit 0 in the least-significant bit.
struct BasisState {
  std::uint64_t bits = 0;

  friend auto operator<=>(const BasisState&, const BasisState&) = default;
};

/// Formats a basis state as a bitstring with qubit 0 right-most.
std::string to_bitstring(BasisState state, int n_qubits);

/// Parses a bitstring written with qubit 0 right-most.
BasisState parse_bitstring(std::string_view text, int n_qubits);

struct PauliTerm {
  std::uint64_t x_mask = 0;
  std::uint64_t z_mask = 0;
  Complex coefficient{1.0, 0.0};

  bool is_identity() const { return (x_mask | z_mask) == 0; }
  int y_count() const { return std::popcount(x_mask & z_mask); }
  std::uint64_t support() const { return x_mask | z_mask; }

  /// Token form, e.g. "X0 Z3 Y5"; empty for the identity.
  std::string label() const;
};

/// Parses one Pauli string ("X0 Z3", "" for identity) into masks. The
/// coefficient of the result is 1.
PauliTerm parse_pauli_string(std::string_view text, int n_qubits);

/**
 * A weighted sum of Pauli strings on n_qubits.
 *
 * Construction canonicalizes: terms with identical masks are merged by
 * adding coefficients (first occurrence keeps its position), then terms
 * whose merged |coefficient| is below the drop threshold are removed.
 */
class PauliSum {
 public:
  PauliSum(int n_qubits, std::vector<PauliTerm> terms,
           double drop_threshold = kDefaultDropThreshold);

  int n_qubits() const { return n_qubits_; }
  std::uint64_t dimension() const { return std::uint64_t{1} << n_qubits_; }
  std::span<const PauliTerm> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  /// True when every coefficient has zero imaginary part.
  bool is_hermitian() const;

  /// Coefficient of the identity string (0 when absent).
  double identity_coefficient() const;

  std::optional<int> n_electrons;
  std::string label;

 private:
  int n_qubits_;
  std::vector<PauliTerm> terms_;
};

struct ParseOptions {
  double drop_threshold = kDefaultDropThreshold;
  /// Reject coefficients with a nonzero imaginary part.
  bool require_hermitian = true;
};

/// Parses the JSON interchange format:
/// {"n_qubits": int, "n_electrons": int|null, "label": string,
///  "terms": [{"pauli": "X0 Z3", "coeff": real | [real, imag]}]}
/// Throws InputError on malformed content.
PauliSum parse_hamiltonian(std::string_view text,
                           const ParseOptions& options = {});

PauliSum load_hamiltonian(const std::filesystem::path& path,
                          const ParseOptions& options = {});

/// Serializes back to the interchange format (real coefficients as numbers).
std::string to_json(const PauliSum& hamiltonian);

/// Result of P|i> = phase |target>.
struct TermAction {
  Complex phase;
  BasisState target;
};

/// Y|0> = i|1>, Y|1> = -i|0>. The phase includes the term coefficient.
inline TermAction apply_term_to_basis(const PauliTerm& term, BasisState i) {
  static constexpr Complex kIPowers[4] = {
      {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
  Complex phase = term.coefficient * kIPowers[term.y_count() & 3];
  if (std::popcount(term.z_mask & i.bits) & 1) phase = -phase;
  return {phase, BasisState{i.bits ^ term.x_mask}};
}

/// Nonzero <j|H|i0> for every j reached from i0, accumulated over terms.
std::map<BasisState, Complex> connected_matrix_elements(
    const PauliSum& hamiltonian, BasisState i0);

/// True iff on every qubit the two Paulis agree or one is the identity.
bool qubitwise_commute(const PauliTerm& a, const PauliTerm& b);

using TermGroups = std::vector<std::vector<std::size_t>>;

/// First-fit grouping of the non-identity terms in order of descending
/// |coefficient| (stable, so ties keep file order).
TermGroups greedy_grouping(const PauliSum& hamiltonian);

/// Every non-identity term in its own group.
TermGroups singleton_grouping(const PauliSum& hamiltonian);

/// Sum of |coefficient| over non-identity terms.
double one_norm(const PauliSum& hamiltonian);

struct CouplingTerms {
  /// Indices of the terms contributing to some <j|H|i0>.
  std::vector<std::size_t> indices;
  /// Sum of |h| over those terms.
  double one_norm_t = 0.0;
  /// Sum over j of |<j|H|i0>|; never exceeds one_norm_t.
  double matrix_element_sum = 0.0;
};

/// A Pauli string never annihilates a basis state, so every term couples to
/// i0 through exactly one <j|H|i0>; the returned set is all terms.
CouplingTerms terms_coupling_to(const PauliSum& hamiltonian, BasisState i0);

}  // namespace cbvqe
