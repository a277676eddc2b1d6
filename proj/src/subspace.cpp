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

#include "cbvqe/subspace.hpp"

#include <cmath>
#include <limits>

#include "cbvqe/error.hpp"

namespace cbvqe {

namespace {

template <typename Matrix>
bool is_hermitian(const Matrix& m) {
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= 1e-12 * scale;
}

template <typename Matrix>
void check_overlap_matrix(const Matrix& s) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(s, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues()(0);
  const double hi = eig.eigenvalues()(eig.eigenvalues().size() - 1);
  if (!(lo > kOverlapEigenFloor)) {
    throw NumericalError(
        "overlap matrix is not positive definite (smallest eigenvalue " +
        std::to_string(lo) + "); subspace states are linearly dependent");
  }
  if (hi / lo > kMaxOverlapCondition) {
    throw NumericalError("overlap matrix is ill-conditioned (condition " +
                         std::to_string(hi / lo) + ")");
  }
}

void fix_signs(Eigen::MatrixXd& v) {
  for (Eigen::Index c = 0; c < v.cols(); ++c) {
    const double cutoff = 1e-12 * v.col(c).cwiseAbs().maxCoeff();
    for (Eigen::Index r = 0; r < v.rows(); ++r) {
      if (std::abs(v(r, c)) > cutoff) {
        if (v(r, c) < 0.0) v.col(c) = -v.col(c);
        break;
      }
    }
  }
}

double lowest_complex_eigenvalue(const Eigen::MatrixXcd& h,
                                 const Eigen::MatrixXcd& s) {
  check_overlap_matrix(s);
  Eigen::LLT<Eigen::MatrixXcd> llt(s);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("Cholesky factorization of the overlap failed");
  }
  const Eigen::MatrixXcd l = llt.matrixL();
  const Eigen::MatrixXcd tmp =
      l.triangularView<Eigen::Lower>().solve(h);
  const Eigen::MatrixXcd c =
      l.triangularView<Eigen::Lower>().solve(tmp.adjoint()).adjoint();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(
      0.5 * (c + c.adjoint()), Eigen::EigenvaluesOnly);
  return eig.eigenvalues()(0);
}

}  // namespace

SubspaceProblem::SubspaceProblem(Eigen::MatrixXd h_bar, Eigen::MatrixXd s_bar,
                                 std::vector<SubspaceLabel> labels)
    : h_bar_(std::move(h_bar)),
      s_bar_(std::move(s_bar)),
      labels_(std::move(labels)) {
  if (h_bar_.rows() == 0 || h_bar_.rows() != h_bar_.cols() ||
      s_bar_.rows() != s_bar_.cols() || h_bar_.rows() != s_bar_.rows()) {
    throw InputError("subspace matrices must be square and the same size");
  }
  if (!labels_.empty() &&
      static_cast<Eigen::Index>(labels_.size()) != h_bar_.rows()) {
    throw InputError("one label per subspace state expected");
  }
  if (!is_hermitian(h_bar_) || !is_hermitian(s_bar_)) {
    throw InputError("subspace matrices must be symmetric");
  }
  if ((s_bar_.diagonal().array() - 1.0).abs().maxCoeff() > 1e-12) {
    throw InputError("overlap matrix must have a unit diagonal");
  }
  check_overlap_matrix(s_bar_);
}

SubspaceProblem two_state_problem(double h11, double h12, double h22,
                                  double s12) {
  Eigen::MatrixXd h(2, 2);
  h << h11, h12, h12, h22;
  Eigen::MatrixXd s(2, 2);
  s << 1.0, s12, s12, 1.0;
  return SubspaceProblem(std::move(h), std::move(s),
                         {SubspaceLabel::kClassical, SubspaceLabel::kQuantum});
}

SubspaceProblem build_two_state_problem(const PauliSum& hamiltonian,
                                        BasisState i0,
                                        const Statevector& phi_q) {
  if (hamiltonian.n_qubits() != phi_q.n_qubits()) {
    throw InputError("Hamiltonian and state qubit counts differ");
  }
  if (std::abs(phi_q.norm() - 1.0) > 1e-10) {
    throw InputError("quantum state must be normalized");
  }
  const auto elements = connected_matrix_elements(hamiltonian, i0);
  double h11 = 0.0;
  double h12 = 0.0;
  for (const auto& [j, value] : elements) {
    if (j == i0) h11 = value.real();
    h12 += phi_q[j.bits].real() * value.real();
  }
  const double h22 = expectation(hamiltonian, phi_q);
  const double s12 = phi_q[i0.bits].real();
  return two_state_problem(h11, h12, h22, s12);
}

GevpSolution solve_real_gevp(const Eigen::MatrixXd& h_bar,
                             const Eigen::MatrixXd& s_bar) {
  if (h_bar.rows() == 0 || h_bar.rows() != h_bar.cols() ||
      s_bar.rows() != h_bar.rows() || s_bar.cols() != h_bar.cols()) {
    throw InputError("GEVP matrices must be square and the same size");
  }
  if (!is_hermitian(h_bar) || !is_hermitian(s_bar)) {
    throw InputError("GEVP matrices must be symmetric");
  }
  check_overlap_matrix(s_bar);
  Eigen::LLT<Eigen::MatrixXd> llt(s_bar);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("Cholesky factorization of the overlap failed");
  }
  const Eigen::MatrixXd l = llt.matrixL();
  // C = L^-1 H L^-T, C u = l u, v = L^-T u so that v^T S v = u^T u = 1.
  const Eigen::MatrixXd tmp = l.triangularView<Eigen::Lower>().solve(h_bar);
  Eigen::MatrixXd c =
      l.triangularView<Eigen::Lower>().solve(tmp.transpose()).transpose();
  c = 0.5 * (c + c.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(c);
  if (eig.info() != Eigen::Success) {
    throw NumericalError("symmetric eigensolver failed");
  }

  GevpSolution out;
  out.eigenvalues = eig.eigenvalues();
  out.eigenvectors =
      l.transpose().triangularView<Eigen::Upper>().solve(eig.eigenvectors());
  fix_signs(out.eigenvectors);
  out.gap = out.eigenvalues.size() > 1
                ? out.eigenvalues(1) - out.eigenvalues(0)
                : std::numeric_limits<double>::infinity();
  return out;
}

GevpSolution solve_real_gevp(const SubspaceProblem& problem) {
  return solve_real_gevp(problem.h_bar(), problem.s_bar());
}

Sensitivities eigen_sensitivities(const GevpSolution& solution,
                                  Eigen::Index which,
                                  double degeneracy_threshold) {
  const Eigen::Index k = solution.eigenvalues.size();
  if (which < 0 || which >= k) throw InputError("eigenvalue index out of range");
  const double lambda = solution.eigenvalues(which);
  double separation = std::numeric_limits<double>::infinity();
  if (which > 0) {
    separation = std::min(separation, lambda - solution.eigenvalues(which - 1));
  }
  if (which + 1 < k) {
    separation = std::min(separation, solution.eigenvalues(which + 1) - lambda);
  }
  if (separation < degeneracy_threshold) {
    throw NumericalError(
        "eigenvalue is degenerate; sensitivities are not defined");
  }
  const Eigen::VectorXd v = solution.eigenvectors.col(which);
  Sensitivities out;
  out.d_h = 2.0 * v * v.transpose();
  out.d_h.diagonal() = v.array().square().matrix();
  out.d_s = -lambda * out.d_h;
  return out;
}

double rayleigh_quotient(const Eigen::MatrixXcd& h_bar,
                         const Eigen::MatrixXcd& s_bar,
                         const Eigen::VectorXd& w) {
  if (w.size() != h_bar.rows() || w.size() != s_bar.rows()) {
    throw InputError("Rayleigh quotient vector has the wrong length");
  }
  const double num = w.dot(h_bar.real() * w);
  const double den = w.dot(s_bar.real() * w);
  if (!(den > 0.0)) {
    throw InputError("w^T S w must be positive in the Rayleigh quotient");
  }
  return num / den;
}

UpperBoundCheck verify_upper_bound(const Eigen::MatrixXcd& h_bar,
                                   const Eigen::MatrixXcd& s_bar) {
  if (!is_hermitian(h_bar) || !is_hermitian(s_bar)) {
    throw InputError("upper-bound check needs Hermitian matrices");
  }
  UpperBoundCheck out;
  out.lambda_complex = lowest_complex_eigenvalue(h_bar, s_bar);
  out.lambda_real =
      solve_real_gevp(Eigen::MatrixXd(h_bar.real()),
                      Eigen::MatrixXd(s_bar.real()))
          .eigenvalues(0);
  const double slack = 1e-12 * std::max(1.0, std::abs(out.lambda_real));
  out.holds = out.lambda_complex <= out.lambda_real + slack;
  return out;
}

}  // namespace cbvqe
