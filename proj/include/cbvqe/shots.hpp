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
 * Measurement-cost model: first-order variance of the boosted eigenvalue,
 * K-factors (Var = K / M) for boosted and conventional estimation, optimal
 * shot allocation, and speedups.
 *
 * Conventions: alpha = <i0|gs> >= 0, v1 = alpha, v2 = sqrt(1 - alpha^2),
 * cross elements are Re<i|H|i0> keyed by basis state i, overlaps are
 * y_i = Re<phi_q|i>. All energies in Hartree.
 */

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cbvqe/pauli.hpp"
#include "cbvqe/statevec.hpp"

namespace cbvqe {

using BasisMap = std::map<BasisState, double>;

/// One independently estimated quantity x_j with Var(x_j) = sigma_sq / shots
/// entering the target with first-order weight `sensitivity`.
struct VarianceTerm {
  std::string label;
  double sensitivity = 0.0;
  double sigma_sq = 0.0;
  std::uint64_t shots = 0;

  double weight() const;  // |a| sigma
};

struct ShotPlan {
  std::uint64_t total_shots = 0;
  std::vector<VarianceTerm> terms;
  /// (sum |a_j| sigma_j)^2 / N
  double continuum_variance = 0.0;
  /// sum a_j^2 sigma_j^2 / M_j over terms with nonzero weight
  double achieved_variance = 0.0;
  std::optional<double> epsilon;
};

/// Var(y_hat) = (1 - y^2) / M. Throws InputError for M == 0 or |y| > 1.
double overlap_variance(double y, std::uint64_t shots);

/// 4 v1^2 v2^2 sum_i (<i|H|i0> - E delta_{i,i0})^2 Var(y_i) + v2^4 Var(H22).
/// The sum runs over the keys of `overlap_vars`. Returns 0 for |alpha| >= 1.
double propagate_eigenvalue_variance(double alpha, double energy,
                                     const BasisMap& cross_elements,
                                     const BasisMap& overlap_vars,
                                     double var_h22, BasisState i0);

/// Shots proportional to |a_j| sigma_j: largest-remainder rounding with at
/// least one shot per nonzero-weight term, then single-shot exchanges until
/// no move lowers the achieved variance. Zero-weight terms get no shots.
/// Throws InputError when no term has weight or N is smaller than the
/// number of nonzero-weight terms.
ShotPlan optimal_allocation(std::vector<VarianceTerm> terms,
                            std::uint64_t total_shots);

/// Terms of the boosted estimator: one per overlap y_i with
/// a_i = 2 v1 v2 (<i|H|i0> - E delta), sigma^2 = 1 - y_i^2, then "H22" with
/// a = v2^2, sigma^2 = K'. The overlap set is cross_elements' keys plus i0.
std::vector<VarianceTerm> hf_vqe_variance_terms(double alpha, double energy,
                                                const BasisMap& cross_elements,
                                                const BasisMap& overlaps,
                                                double k_prime, BasisState i0);

/// (2 alpha sqrt(1-alpha^2) sum_i |<i|H|i0> - E delta| sqrt(1-y_i^2)
///  + (1 - alpha^2) sqrt(K'))^2
double k_factor_hf_vqe(double alpha, double energy,
                       const BasisMap& cross_elements, const BasisMap& overlaps,
                       double k_prime, BasisState i0);

/// Per-shot standard deviation of each group's summed estimate with
/// covariances neglected: sqrt(sum_{t in g} h_t^2 (1 - <P_t>^2)).
std::vector<double> group_sigmas(const PauliSum& hamiltonian,
                                 const Statevector& psi,
                                 const TermGroups& groups);

/// (sum_g sigma_g)^2: groups share shots internally and are allocated
/// optimally against each other. Throws InputError when `groups` is not a
/// partition of the non-identity terms.
double k_factor_conventional_vqe(const PauliSum& hamiltonian,
                                 const Statevector& psi,
                                 const TermGroups& groups);

/// K' for estimating <phi_q|H|phi_q>; the same estimator evaluated on phi_q.
double k_prime_for_h22(const PauliSum& hamiltonian, const Statevector& phi_q,
                       const TermGroups& groups);

/// ceil(K / epsilon^2), with quotients within 1e-12 relative of an integer
/// rounded to it. Throws InputError for epsilon <= 0.
std::uint64_t shots_for_precision(double k_factor, double epsilon);

/// K_vqe / K_hf, or nullopt when K_hf == 0 (infinite speedup).
std::optional<double> speedup(double k_vqe, double k_hf);

/// 1 / (1 - alpha^2)^2. Throws InputError for |alpha| >= 1.
double asymptotic_speedup(double alpha);

/// speedup * (1 - alpha^2)^2. Throws InputError for |alpha| >= 1.
double asymptotic_ratio(double exact_speedup, double alpha);

/// Speedup with every term variance and every sqrt(1 - y_i^2) replaced by
/// its upper bound 1:
/// 1/sqrt(S) = 2 alpha sqrt(1-alpha^2) sum_i |<i|H|i0> - E delta| / ||H||_1
///             + (1 - alpha^2).
double bounded_speedup(double alpha, double energy,
                       const BasisMap& cross_elements, double hamiltonian_norm,
                       BasisState i0);

}  // namespace cbvqe
