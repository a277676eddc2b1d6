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

#include "cbvqe/statevec.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "cbvqe/error.hpp"
#include "cbvqe/kernels.hpp"

namespace cbvqe {

namespace {

void check_dimension(const PauliSum& h, const Statevector& psi) {
  if (h.n_qubits() != psi.n_qubits()) {
    throw InputError("Hamiltonian has " + std::to_string(h.n_qubits()) +
                     " qubits but the state has " +
                     std::to_string(psi.n_qubits()));
  }
}

double scale_of(const PauliSum& h) {
  return std::max(1.0, one_norm(h) + std::abs(h.identity_coefficient()));
}

bool is_real_matrix(const PauliSum& h) {
  // Real coefficients and an even number of Y factors give real entries.
  return std::all_of(h.terms().begin(), h.terms().end(),
                     [](const PauliTerm& t) {
                       return t.coefficient.imag() == 0.0 &&
                              (t.y_count() % 2) == 0;
                     });
}

GroundStateResult dense_ground_state(const PauliSum& h,
                                     const GroundStateOptions& options) {
  const auto dim = static_cast<Eigen::Index>(h.dimension());
  const Eigen::MatrixXcd m = dense_matrix(h);
  GroundStateResult result;
  std::vector<Complex> amps(static_cast<std::size_t>(dim));
  double e1 = 0.0;
  if (is_real_matrix(h)) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.real());
    if (solver.info() != Eigen::Success) {
      throw NumericalError("dense eigensolver failed");
    }
    result.energy = solver.eigenvalues()(0);
    e1 = dim > 1 ? solver.eigenvalues()(1) : result.energy;
    for (Eigen::Index k = 0; k < dim; ++k) {
      amps[static_cast<std::size_t>(k)] = solver.eigenvectors()(k, 0);
    }
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
    if (solver.info() != Eigen::Success) {
      throw NumericalError("dense eigensolver failed");
    }
    result.energy = solver.eigenvalues()(0);
    e1 = dim > 1 ? solver.eigenvalues()(1) : result.energy;
    for (Eigen::Index k = 0; k < dim; ++k) {
      amps[static_cast<std::size_t>(k)] = solver.eigenvectors()(k, 0);
    }
  }
  result.state = Statevector(h.n_qubits(), std::move(amps));
  result.state.normalize();
  result.gap = dim > 1 ? e1 - result.energy
                       : std::numeric_limits<double>::infinity();
  result.degenerate = result.gap < options.degeneracy_threshold;
  return result;
}

using Vec = std::vector<Complex>;

// Two passes of classical Gram-Schmidt against `basis`; returns the norm
// left after projection.
double orthogonalize(Vec& v, const std::vector<Vec>& basis) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& b : basis) {
      const Complex c = kernels::inner(b, v);
      for (std::size_t k = 0; k < v.size(); ++k) v[k] -= c * b[k];
    }
  }
  return std::sqrt(kernels::norm_squared(v));
}

// Thick-restart block Davidson: the space grows by diagonally
// preconditioned residuals of the two lowest Ritz pairs. Block size two so
// that a doubly degenerate ground level is resolved.
GroundStateResult krylov_ground_state(const PauliSum& h,
                                      const GroundStateOptions& options) {
  const std::size_t dim = h.dimension();
  const double tol = options.tolerance * scale_of(h);
  const std::size_t want = std::min<std::size_t>(2, dim);
  const std::size_t keep = std::min<std::size_t>(4, dim);
  const auto max_basis = std::min<std::size_t>(
      dim, static_cast<std::size_t>(std::max(options.max_basis, 8)));

  // Diagonal of H from the terms without X or Y.
  std::vector<double> diag(dim, 0.0);
  for (const auto& term : h.terms()) {
    if (term.x_mask != 0) continue;
    const double c = term.coefficient.real();
    for (std::size_t i = 0; i < dim; ++i) {
      diag[i] += (std::popcount(term.z_mask & i) & 1) ? -c : c;
    }
  }

  std::vector<Vec> basis;
  std::vector<Vec> images;
  Eigen::MatrixXcd t(0, 0);
  auto add = [&](Vec v) {
    const double nrm = orthogonalize(v, basis);
    if (nrm < 1e-10) return false;
    for (auto& x : v) x /= nrm;
    Vec hv(dim);
    kernels::apply_sum(h, v, hv);
    const auto m = t.rows();
    t.conservativeResize(m + 1, m + 1);
    for (Eigen::Index a = 0; a < m; ++a) {
      const Complex c = kernels::inner(basis[static_cast<std::size_t>(a)], hv);
      t(a, m) = c;
      t(m, a) = std::conj(c);
    }
    t(m, m) = kernels::inner(v, hv).real();
    basis.push_back(std::move(v));
    images.push_back(std::move(hv));
    return true;
  };

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal;
  // Start from the lowest diagonal entries, lightly randomized so that no
  // symmetry sector is excluded from the space.
  std::vector<std::size_t> order(dim);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(want),
                    order.end(), [&](std::size_t a, std::size_t b) {
                      return diag[a] < diag[b] || (diag[a] == diag[b] && a < b);
                    });
  for (std::size_t s = 0; s < want; ++s) {
    Vec v(dim);
    for (auto& x : v) x = normal(rng);
    const double scale = 1e-2 / std::sqrt(kernels::norm_squared(v));
    for (auto& x : v) x *= scale;
    v[order[s]] += 1.0;
    add(std::move(v));
  }

  std::vector<Vec> ritz_vecs;
  std::vector<Vec> residuals;
  std::vector<double> res_norms;

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    const auto m = static_cast<Eigen::Index>(basis.size());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(t);
    const Eigen::VectorXd theta = solver.eigenvalues();
    const Eigen::MatrixXcd& ritz = solver.eigenvectors();

    const std::size_t n_ritz = std::min<std::size_t>(keep, basis.size());
    ritz_vecs.assign(n_ritz, Vec(dim));
    std::vector<Vec> ritz_images(n_ritz, Vec(dim));
    for (std::size_t r = 0; r < n_ritz; ++r) {
      for (Eigen::Index a = 0; a < m; ++a) {
        const Complex c = ritz(a, static_cast<Eigen::Index>(r));
        const auto& b = basis[static_cast<std::size_t>(a)];
        const auto& hb = images[static_cast<std::size_t>(a)];
        for (std::size_t k = 0; k < dim; ++k) {
          ritz_vecs[r][k] += c * b[k];
          ritz_images[r][k] += c * hb[k];
        }
      }
    }
    const std::size_t n_check = std::min(want, n_ritz);
    residuals.assign(n_check, Vec(dim));
    res_norms.assign(n_check, 0.0);
    for (std::size_t r = 0; r < n_check; ++r) {
      const double th = theta(static_cast<Eigen::Index>(r));
      for (std::size_t k = 0; k < dim; ++k) {
        residuals[r][k] = ritz_images[r][k] - th * ritz_vecs[r][k];
      }
      res_norms[r] = std::sqrt(kernels::norm_squared(residuals[r]));
    }
    const bool converged =
        std::all_of(res_norms.begin(), res_norms.end(),
                    [&](double r) { return r <= tol; }) ||
        basis.size() == dim;
    if (converged) {
      GroundStateResult result;
      result.iterative = true;
      result.energy = theta(0);
      result.state = Statevector(h.n_qubits(), ritz_vecs[0]);
      result.state.normalize();
      result.residual = res_norms[0];
      result.gap = theta.size() > 1 ? theta(1) - theta(0)
                                    : std::numeric_limits<double>::infinity();
      result.degenerate = result.gap < options.degeneracy_threshold;
      return result;
    }

    if (basis.size() + n_check > max_basis) {
      basis = ritz_vecs;
      images = ritz_images;
      t = theta.head(static_cast<Eigen::Index>(n_ritz))
              .cast<Complex>()
              .asDiagonal();
    }
    bool grew = false;
    for (std::size_t r = 0; r < n_check; ++r) {
      if (res_norms[r] <= tol) continue;
      const double th = theta(static_cast<Eigen::Index>(r));
      Vec c = residuals[r];
      for (std::size_t k = 0; k < dim; ++k) {
        double d = th - diag[k];
        if (std::abs(d) < 1e-4) d = d < 0.0 ? -1e-4 : 1e-4;
        c[k] /= d;
      }
      // Fall back to the raw residual if preconditioning collapses it.
      if (!add(std::move(c))) grew = add(residuals[r]) || grew;
      else grew = true;
    }
    if (!grew) {
      // Residuals already inside the space: refresh with a random direction.
      Vec v(dim);
      for (auto& x : v) x = normal(rng);
      if (!add(std::move(v))) break;
    }
  }
  throw NumericalError("Krylov ground-state solver did not converge");
}

}  // namespace

Statevector::Statevector(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 1 || n_qubits > 30) {
    throw InputError("statevector qubit count out of range");
  }
  amplitudes_.assign(std::size_t{1} << n_qubits, Complex{0.0, 0.0});
  amplitudes_[0] = 1.0;
}

Statevector::Statevector(int n_qubits, std::vector<Complex> amplitudes)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
  if (n_qubits < 1 || n_qubits > 30 ||
      amplitudes_.size() != (std::size_t{1} << n_qubits)) {
    throw InputError("amplitude count does not match 2^n_qubits");
  }
}

double Statevector::norm() const {
  return std::sqrt(kernels::norm_squared(amplitudes_));
}

void Statevector::normalize() {
  const double n = norm();
  if (n == 0.0) throw NumericalError("cannot normalize a zero vector");
  for (auto& a : amplitudes_) a /= n;
}

Statevector basis_statevector(BasisState i, int n_qubits) {
  Statevector psi(n_qubits);
  if (i.bits >= psi.dimension()) {
    throw InputError("basis state outside 2^n_qubits");
  }
  psi[0] = 0.0;
  psi[i.bits] = 1.0;
  return psi;
}

Eigen::MatrixXcd dense_matrix(const PauliSum& hamiltonian) {
  const std::uint64_t dim = hamiltonian.dimension();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                              static_cast<Eigen::Index>(dim));
  for (std::uint64_t i = 0; i < dim; ++i) {
    for (const auto& term : hamiltonian.terms()) {
      const auto [phase, j] = apply_term_to_basis(term, BasisState{i});
      m(static_cast<Eigen::Index>(j.bits), static_cast<Eigen::Index>(i)) +=
          phase;
    }
  }
  return m;
}

int qubit_cap_from_env() {
  if (const char* env = std::getenv("CBVQE_MAX_QUBITS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1 || v > 30) {
      throw InputError("CBVQE_MAX_QUBITS must be an integer in [1, 30]");
    }
    return static_cast<int>(v);
  }
  return kDefaultQubitCap;
}

GroundStateResult exact_ground_state(const PauliSum& hamiltonian,
                                     const GroundStateOptions& options) {
  if (hamiltonian.n_qubits() > options.max_qubits) {
    throw InputError("Hamiltonian has " +
                     std::to_string(hamiltonian.n_qubits()) +
                     " qubits, above the cap of " +
                     std::to_string(options.max_qubits));
  }
  if (!hamiltonian.is_hermitian()) {
    throw InputError("ground state requested for a non-Hermitian operator");
  }
  GroundStateResult result =
      (!options.force_iterative &&
       hamiltonian.n_qubits() <= options.dense_max_qubits)
          ? dense_ground_state(hamiltonian, options)
          : krylov_ground_state(hamiltonian, options);

  std::vector<Complex> hv(result.state.dimension());
  kernels::apply_sum(hamiltonian, result.state.amplitudes(), hv);
  double r2 = 0.0;
  for (std::size_t k = 0; k < hv.size(); ++k) {
    r2 += std::norm(hv[k] - result.energy * result.state[k]);
  }
  result.residual = std::sqrt(r2);
  return result;
}

double expectation(const PauliSum& hamiltonian, const Statevector& psi) {
  check_dimension(hamiltonian, psi);
  double total = 0.0;
  for (const auto& term : hamiltonian.terms()) {
    total += kernels::term_expectation(term, psi.amplitudes()).real();
  }
  return total;
}

double term_variance(const PauliTerm& pauli, const Statevector& psi) {
  if (std::abs(std::abs(pauli.coefficient) - 1.0) > 1e-12) {
    throw InputError("term_variance expects a unit-magnitude coefficient");
  }
  PauliTerm unit = pauli;
  unit.coefficient = 1.0;
  const double mean = kernels::term_expectation(unit, psi.amplitudes()).real();
  return std::clamp(1.0 - mean * mean, 0.0, 1.0);
}

std::vector<double> term_variances(const PauliSum& hamiltonian,
                                   const Statevector& psi) {
  check_dimension(hamiltonian, psi);
  auto means = kernels::pauli_expectations(hamiltonian, psi.amplitudes());
  for (auto& m : means) m = std::clamp(1.0 - m * m, 0.0, 1.0);
  return means;
}

std::map<BasisState, double> overlaps_with_basis(
    const Statevector& psi, std::optional<std::span<const BasisState>> support) {
  std::map<BasisState, double> out;
  if (support) {
    for (const BasisState s : *support) {
      if (s.bits >= psi.dimension()) {
        throw InputError("basis state outside the statevector");
      }
      out[s] = psi[s.bits].real();
    }
    return out;
  }
  for (std::uint64_t i = 0; i < psi.dimension(); ++i) {
    if (psi[i] != Complex{0.0, 0.0}) out[BasisState{i}] = psi[i].real();
  }
  return out;
}

Deflation deflate_quantum_state(const Statevector& ground_state,
                                BasisState i0) {
  if (i0.bits >= ground_state.dimension()) {
    throw InputError("reference state outside the statevector");
  }
  const Complex a = ground_state[i0.bits];
  const double alpha = std::abs(a);
  Deflation out;
  out.alpha = alpha;
  if (alpha >= 1.0 - 1e-12) return out;

  const Complex rotate = alpha > 0.0 ? std::conj(a) / alpha : Complex{1.0, 0.0};
  std::vector<Complex> amps(ground_state.amplitudes().begin(),
                            ground_state.amplitudes().end());
  const double scale = 1.0 / std::sqrt(1.0 - alpha * alpha);
  for (auto& v : amps) v *= rotate * scale;
  amps[i0.bits] = 0.0;
  Statevector phi(ground_state.n_qubits(), std::move(amps));
  phi.normalize();
  out.phi_q = std::move(phi);
  return out;
}

BasisState select_reference_state(const Statevector& ground_state,
                                  std::optional<int> n_electrons) {
  auto argmax = [&](auto&& accept) -> std::optional<BasisState> {
    std::optional<BasisState> best;
    double best_mag = 0.0;
    for (std::uint64_t i = 0; i < ground_state.dimension(); ++i) {
      if (!accept(i)) continue;
      const double mag = std::abs(ground_state[i]);
      if (mag > best_mag) {
        best_mag = mag;
        best = BasisState{i};
      }
    }
    return best;
  };
  if (n_electrons) {
    const int ne = *n_electrons;
    if (auto best = argmax([&](std::uint64_t i) {
          return std::popcount(i) == ne;
        })) {
      return *best;
    }
  }
  if (auto best = argmax([](std::uint64_t) { return true; })) return *best;
  return BasisState{0};
}

std::vector<BlockSite> brick_layout(int n_qubits, int layers) {
  std::vector<BlockSite> sites;
  for (int layer = 0; layer < layers; ++layer) {
    for (int low = layer % 2; low + 1 < n_qubits; low += 2) {
      sites.push_back({layer, low});
    }
  }
  return sites;
}

Statevector apply_ansatz(const AnsatzSpec& spec) {
  if (spec.n_qubits < 2) throw InputError("ansatz needs at least two qubits");
  if (spec.layers < 0) throw InputError("ansatz layer count is negative");
  const auto sites = brick_layout(spec.n_qubits, spec.layers);
  if (spec.angles.size() != sites.size()) {
    throw InputError("ansatz expects " + std::to_string(sites.size()) +
                     " block angle pairs, got " +
                     std::to_string(spec.angles.size()));
  }
  Statevector psi = basis_statevector(spec.initial, spec.n_qubits);
  for (std::size_t b = 0; b < sites.size(); ++b) {
    kernels::apply_number_conserving_block(
        psi.amplitudes(), sites[b].low, sites[b].low + 1, spec.angles[b].theta,
        spec.angles[b].phi);
  }
  return psi;
}

BlockCount count_coupling_blocks(const AnsatzSpec& spec) {
  const std::uint64_t bits = spec.initial.bits;
  if ((bits & (bits + 1)) != 0) {
    throw InputError("coupling-block count expects |0...01...1>");
  }
  BlockCount count;
  for (const auto& site : brick_layout(spec.n_qubits, spec.layers)) {
    ++count.total;
    const bool lo = (bits >> site.low) & 1U;
    const bool hi = (bits >> (site.low + 1)) & 1U;
    if (lo != hi) ++count.coupling;
  }
  return count;
}

}  // namespace cbvqe
