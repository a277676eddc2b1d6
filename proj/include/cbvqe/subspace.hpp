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
 * Subspace matrices H_bar / S_bar over a set of classical and quantum
 * states, the real symmetric generalized eigenproblem H_bar v = l S_bar v,
 * first-order eigenvalue sensitivities, and the check that dropping
 * imaginary parts can only raise the lowest eigenvalue.
 */

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "cbvqe/pauli.hpp"
#include "cbvqe/statevec.hpp"

namespace cbvqe {

enum class SubspaceLabel { kClassical, kQuantum };

inline constexpr double kOverlapEigenFloor = 1e-10;
inline constexpr double kMaxOverlapCondition = 1e10;

/**
 * H_bar and S_bar for a k-state subspace.
 *
 * Invariants, checked on construction (InputError / NumericalError):
 * both symmetric, S_bar has unit diagonal and smallest eigenvalue above
 * kOverlapEigenFloor.
 */
class SubspaceProblem {
 public:
  SubspaceProblem(Eigen::MatrixXd h_bar, Eigen::MatrixXd s_bar,
                  std::vector<SubspaceLabel> labels = {});

  Eigen::Index dim() const { return h_bar_.rows(); }
  const Eigen::MatrixXd& h_bar() const { return h_bar_; }
  const Eigen::MatrixXd& s_bar() const { return s_bar_; }
  const std::vector<SubspaceLabel>& labels() const { return labels_; }

 private:
  Eigen::MatrixXd h_bar_;
  Eigen::MatrixXd s_bar_;
  std::vector<SubspaceLabel> labels_;
};

struct GevpSolution {
  /// Ascending.
  Eigen::VectorXd eigenvalues;
  /// Column j pairs with eigenvalues(j); v^T S_bar v = 1 and the first
  /// nonzero entry of each column is non-negative.
  Eigen::MatrixXd eigenvectors;
  /// eigenvalues(1) - eigenvalues(0), infinity for k = 1.
  double gap = 0.0;
};

/// Two-state problem for reference state |i0> and quantum state phi_q:
/// H11 = <i0|H|i0>, H22 = <phi_q|H|phi_q>,
/// H12 = sum_i y_i Re<i|H|i0> with y_i = Re<phi_q|i>, S12 = y_{i0}.
SubspaceProblem build_two_state_problem(const PauliSum& hamiltonian,
                                        BasisState i0,
                                        const Statevector& phi_q);

/// Same layout from already-estimated entries.
SubspaceProblem two_state_problem(double h11, double h12, double h22,
                                  double s12);

/// Cholesky reduction of a symmetric-definite pair. S may be any SPD
/// matrix here; throws NumericalError when S is not positive definite or
/// its condition number exceeds kMaxOverlapCondition.
GevpSolution solve_real_gevp(const Eigen::MatrixXd& h_bar,
                             const Eigen::MatrixXd& s_bar);
GevpSolution solve_real_gevp(const SubspaceProblem& problem);

struct Sensitivities {
  /// d lambda / d H_ab = v_a v_b (2 - delta_ab)
  Eigen::MatrixXd d_h;
  /// d lambda / d S_ab = -lambda v_a v_b (2 - delta_ab)
  Eigen::MatrixXd d_s;
};

/// Off-diagonal entries are derivatives with respect to the symmetric pair
/// (a,b) and (b,a) moved together. Throws NumericalError when eigenvalue
/// `which` lies within `degeneracy_threshold` of a neighbour.
Sensitivities eigen_sensitivities(const GevpSolution& solution,
                                  Eigen::Index which,
                                  double degeneracy_threshold = 1e-9);

/// (w^T Re(H) w) / (w^T Re(S) w) for real w. Throws InputError when the
/// denominator is not positive.
double rayleigh_quotient(const Eigen::MatrixXcd& h_bar,
                         const Eigen::MatrixXcd& s_bar,
                         const Eigen::VectorXd& w);

struct UpperBoundCheck {
  double lambda_complex = 0.0;
  double lambda_real = 0.0;
  bool holds = false;
};

/// Lowest eigenvalue of the Hermitian pair versus that of its real parts.
UpperBoundCheck verify_upper_bound(const Eigen::MatrixXcd& h_bar,
                                   const Eigen::MatrixXcd& s_bar);

}  // namespace cbvqe
