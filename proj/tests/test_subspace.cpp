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

#include <gtest/gtest.h>

#include <random>

#include "cbvqe/error.hpp"
#include "cbvqe/statevec.hpp"
#include "cbvqe/subspace.hpp"
#include "oracles.hpp"

namespace cbvqe {
namespace {

using Eigen::MatrixXd;

MatrixXd mat2(double a, double b, double c, double d) {
  MatrixXd m(2, 2);
  m << a, b, c, d;
  return m;
}

PauliSum single(const char* label) {
  return PauliSum(1, {parse_pauli_string(label, 1)});
}

TEST(TwoStateProblem, DiagonalAndOffDiagonalExamples) {
  const Statevector one = basis_statevector(BasisState{1}, 1);
  const auto z = build_two_state_problem(single("Z0"), BasisState{0}, one);
  EXPECT_TRUE(z.h_bar().isApprox(mat2(1, 0, 0, -1)));
  EXPECT_TRUE(z.s_bar().isApprox(MatrixXd::Identity(2, 2)));
  const auto x = build_two_state_problem(single("X0"), BasisState{0}, one);
  EXPECT_TRUE(x.h_bar().isApprox(mat2(0, 1, 1, 0)));
  EXPECT_TRUE(x.s_bar().isApprox(MatrixXd::Identity(2, 2)));
}

TEST(TwoStateProblem, ReproducesExactEnergyOnFixtures) {
  for (const char* name : {"h2_sto3g", "h2_sto3g_stretched", "h4_chain_sto3g",
                           "synthetic_2q", "synthetic_3q"}) {
    const PauliSum h = load_hamiltonian(oracle::fixture(name));
    const auto gs = exact_ground_state(h);
    const BasisState i0 = select_reference_state(gs.state, h.n_electrons);
    const Deflation d = deflate_quantum_state(gs.state, i0);
    ASSERT_TRUE(d.phi_q) << name;
    const auto sol = solve_real_gevp(build_two_state_problem(h, i0, *d.phi_q));
    EXPECT_NEAR(sol.eigenvalues(0), gs.energy, 1e-10) << name;
    // v = (alpha, sqrt(1 - alpha^2)) up to the sign convention.
    EXPECT_NEAR(std::abs(sol.eigenvectors(0, 0)), d.alpha, 1e-8) << name;
    EXPECT_NEAR(std::abs(sol.eigenvectors(1, 0)), std::sqrt(1 - d.alpha * d.alpha),
                1e-8)
        << name;
  }
}

TEST(SubspaceProblem, Validation) {
  EXPECT_THROW(SubspaceProblem(mat2(1, 2, 3, 4), MatrixXd::Identity(2, 2)),
               InputError);
  EXPECT_THROW(SubspaceProblem(mat2(1, 0, 0, 1), mat2(2, 0, 0, 1)), InputError);
  EXPECT_THROW(SubspaceProblem(mat2(1, 0, 0, 1), mat2(1, 1, 1, 1)),
               NumericalError);
  EXPECT_THROW(two_state_problem(0.0, 0.0, 0.0, 1.0), NumericalError);
  EXPECT_NO_THROW(two_state_problem(0.0, 0.0, 0.0, 0.99));
  EXPECT_THROW(SubspaceProblem(mat2(1, 0, 0, 1), MatrixXd::Identity(2, 2),
                               {SubspaceLabel::kClassical}),
               InputError);
}

TEST(SolveGevp, Examples) {
  const auto a = solve_real_gevp(mat2(1, 0, 0, -1), MatrixXd::Identity(2, 2));
  EXPECT_DOUBLE_EQ(a.eigenvalues(0), -1.0);
  EXPECT_DOUBLE_EQ(a.eigenvalues(1), 1.0);
  EXPECT_NEAR(a.eigenvectors(1, 0), 1.0, 1e-15);
  EXPECT_NEAR(a.eigenvectors(0, 1), 1.0, 1e-15);

  const auto b = solve_real_gevp(mat2(-1, 0.1, 0.1, 0), MatrixXd::Identity(2, 2));
  EXPECT_NEAR(b.eigenvalues(0), (-1.0 - std::sqrt(1.04)) / 2.0, 1e-15);
  EXPECT_NEAR(b.eigenvalues(0), oracle::lowest_2x2(-1, 0.1, 0, 1, 0, 1), 1e-15);
}

TEST(SolveGevp, ClosedFormWithOverlap) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    const double h11 = u(rng), h12 = u(rng), h22 = u(rng), s12 = 0.9 * u(rng);
    const auto sol = solve_real_gevp(two_state_problem(h11, h12, h22, s12));
    EXPECT_NEAR(sol.eigenvalues(0), oracle::lowest_2x2(h11, h12, h22, 1, s12, 1),
                1e-12);
  }
}

TEST(SolveGevp, RandomAgainstReferenceSolver) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 50; ++t) {
    const int k = 1 + t % 6;
    const MatrixXd h = oracle::random_symmetric(k, rng);
    const MatrixXd s = oracle::random_spd(k, rng);
    const auto sol = solve_real_gevp(h, s);
    Eigen::GeneralizedSelfAdjointEigenSolver<MatrixXd> ref(h, s);
    for (int i = 0; i < k; ++i) {
      EXPECT_NEAR(sol.eigenvalues(i), ref.eigenvalues()(i), 1e-10);
      const Eigen::VectorXd v = sol.eigenvectors.col(i);
      const double residual = (h * v - sol.eigenvalues(i) * s * v).norm();
      EXPECT_LE(residual, 1e-10);
      EXPECT_NEAR(v.dot(s * v), 1.0, 1e-10);
      // First nonzero component non-negative.
      for (int r = 0; r < k; ++r) {
        if (std::abs(v(r)) > 1e-12) {
          EXPECT_GT(v(r), 0.0);
          break;
        }
      }
    }
  }
}

TEST(SolveGevp, CongruenceInvariance) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 40; ++t) {
    const int k = 2 + t % 3;
    const MatrixXd h = oracle::random_symmetric(k, rng);
    const MatrixXd s = oracle::random_spd(k, rng);
    MatrixXd m = oracle::random_symmetric(k, rng) + 3.0 * MatrixXd::Identity(k, k);
    const auto a = solve_real_gevp(h, s);
    const auto b = solve_real_gevp(m.transpose() * h * m, m.transpose() * s * m);
    for (int i = 0; i < k; ++i) EXPECT_NEAR(a.eigenvalues(i), b.eigenvalues(i), 1e-9);
  }
}

TEST(Sensitivities, DiagonalExampleAndRatio) {
  const auto sol = solve_real_gevp(mat2(1, 0, 0, -1), MatrixXd::Identity(2, 2));
  const auto s = eigen_sensitivities(sol, 0);
  EXPECT_DOUBLE_EQ(s.d_h(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(s.d_h(1, 1), 1.0);
  EXPECT_TRUE(s.d_s.isApprox(-sol.eigenvalues(0) * s.d_h));
  EXPECT_THROW(eigen_sensitivities(sol, 2), InputError);
}

TEST(Sensitivities, DegenerateRefused) {
  const auto sol = solve_real_gevp(MatrixXd::Identity(2, 2), MatrixXd::Identity(2, 2));
  EXPECT_THROW(eigen_sensitivities(sol, 0), NumericalError);
}

// Symmetric central differences: H_ab and H_ba move together.
double fd(const MatrixXd& h, const MatrixXd& s, int which, int a, int b,
          bool on_h, double step) {
  MatrixXd hp = h, hm = h, sp = s, sm = s;
  MatrixXd& p = on_h ? hp : sp;
  MatrixXd& m = on_h ? hm : sm;
  p(a, b) += step;
  m(a, b) -= step;
  if (a != b) {
    p(b, a) += step;
    m(b, a) -= step;
  }
  return (solve_real_gevp(hp, sp).eigenvalues(which) -
          solve_real_gevp(hm, sm).eigenvalues(which)) /
         (2.0 * step);
}

TEST(Sensitivities, MatchFiniteDifferences) {
  std::mt19937_64 rng(4);
  int checked = 0;
  for (int t = 0; t < 30; ++t) {
    const int k = 3;
    const MatrixXd h = oracle::random_symmetric(k, rng);
    const MatrixXd s = oracle::random_spd(k, rng);
    const auto sol = solve_real_gevp(h, s);
    for (int which = 0; which < k; ++which) {
      const auto sens = eigen_sensitivities(sol, which);
      for (int a = 0; a < k; ++a) {
        for (int b = a; b < k; ++b) {
          const double gh = fd(h, s, which, a, b, true, 1e-6);
          const double gs = fd(h, s, which, a, b, false, 1e-6);
          EXPECT_NEAR(sens.d_h(a, b), gh, 1e-5 * std::max(1.0, std::abs(gh)));
          EXPECT_NEAR(sens.d_s(a, b), gs, 1e-5 * std::max(1.0, std::abs(gs)));
          ++checked;
        }
      }
    }
  }
  EXPECT_GT(checked, 0);
}

// As the quantum weight v2 -> 0 the eigenvalue stops depending on H22 and H12.
TEST(Sensitivities, VanishingQuantumWeight) {
  double prev22 = 1.0, prev12 = 1.0;
  for (double c : {0.3, 0.1, 0.03, 0.01, 0.001}) {
    // Ground state alpha = sqrt(1 - c^2) in the basis {|i0>, phi}.
    const double alpha = std::sqrt(1.0 - c * c);
    // Build H = U diag(-1, 1) U^T with first eigenvector (alpha, c).
    MatrixXd u(2, 2);
    u << alpha, -c, c, alpha;
    const MatrixXd h = u * mat2(-1, 0, 0, 1) * u.transpose();
    const auto sens = eigen_sensitivities(solve_real_gevp(h, MatrixXd::Identity(2, 2)), 0);
    EXPECT_NEAR(sens.d_h(1, 1), c * c, 1e-12);
    EXPECT_NEAR(sens.d_h(0, 1), 2.0 * alpha * c, 1e-12);
    EXPECT_LT(sens.d_h(1, 1), prev22);
    EXPECT_LT(sens.d_h(0, 1), prev12);
    prev22 = sens.d_h(1, 1);
    prev12 = sens.d_h(0, 1);
  }
  EXPECT_LT(prev22, 1e-5);
  EXPECT_LT(prev12, 3e-3);
}

TEST(RayleighQuotient, Examples) {
  Eigen::MatrixXcd h(2, 2), s(2, 2);
  h << 2.0, 0.5, 0.5, -1.0;
  s << 1.5, 0.2, 0.2, 1.0;
  Eigen::VectorXd e1(2);
  e1 << 1.0, 0.0;
  EXPECT_DOUBLE_EQ(rayleigh_quotient(h, s, e1), 2.0 / 1.5);
  const auto sol = solve_real_gevp(MatrixXd(h.real()), MatrixXd(s.real()));
  EXPECT_NEAR(rayleigh_quotient(h, s, sol.eigenvectors.col(0)), sol.eigenvalues(0),
              1e-14);
}

TEST(RayleighQuotient, ImaginaryPartsDoNotMatterForRealW) {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> n;
  for (int t = 0; t < 50; ++t) {
    const int k = 2 + t % 4;
    const auto h = oracle::random_hermitian(k, rng);
    const auto s = oracle::random_hpd(k, rng);
    Eigen::VectorXd w(k);
    for (int i = 0; i < k; ++i) w(i) = n(rng);
    const Eigen::VectorXcd wc = w.cast<Complex>();
    const Complex num = wc.dot(h * wc);
    const Complex den = wc.dot(s * wc);
    EXPECT_NEAR(rayleigh_quotient(h, s, w), (num / den).real(), 1e-12);
    EXPECT_NEAR(rayleigh_quotient(h, s, w),
                rayleigh_quotient(Eigen::MatrixXcd(h.real().cast<Complex>()),
                                  Eigen::MatrixXcd(s.real().cast<Complex>()), w),
                1e-12);
  }
}

TEST(UpperBound, RealInputIsEquality) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 20; ++t) {
    const int k = 1 + t % 5;
    const Eigen::MatrixXcd h = oracle::random_symmetric(k, rng).cast<Complex>();
    const Eigen::MatrixXcd s = oracle::random_spd(k, rng).cast<Complex>();
    const auto r = verify_upper_bound(h, s);
    EXPECT_TRUE(r.holds);
    EXPECT_NEAR(r.lambda_complex, r.lambda_real, 1e-12);
  }
}

TEST(UpperBound, ImaginaryCouplingIsStrict) {
  for (double gamma : {0.01, 0.3, -1.0}) {
    Eigen::MatrixXcd h(2, 2);
    h << 0.5, Complex(0.2, gamma), Complex(0.2, -gamma), -0.3;
    const auto r = verify_upper_bound(h, Eigen::MatrixXcd::Identity(2, 2));
    const auto [lo, hi] = oracle::hermitian_2x2(0.5, Complex(0.2, gamma), -0.3);
    EXPECT_NEAR(r.lambda_complex, lo, 1e-12);
    EXPECT_NEAR(r.lambda_real, oracle::hermitian_2x2(0.5, 0.2, -0.3).first, 1e-12);
    EXPECT_LT(r.lambda_complex, r.lambda_real);
    EXPECT_TRUE(r.holds);
  }
}

TEST(UpperBound, RandomHermitian) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 200; ++t) {
    const int k = 1 + t % 5;
    const auto r = verify_upper_bound(oracle::random_hermitian(k, rng),
                                      oracle::random_hpd(k, rng));
    EXPECT_TRUE(r.holds) << r.lambda_complex << " vs " << r.lambda_real;
  }
}

}  // namespace
}  // namespace cbvqe
