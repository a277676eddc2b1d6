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

#include "cbvqe/validation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <random>

#include "cbvqe/error.hpp"
#include "cbvqe/hadamard.hpp"
#include "cbvqe/kernels.hpp"
#include "cbvqe/subspace.hpp"

namespace cbvqe {

namespace {

struct SampledOverlap {
  BasisState basis;
  double y = 0.0;
  double cross = 0.0;
  std::uint64_t shots = 0;
};

struct SampledTerm {
  double coefficient = 0.0;
  double mean = 0.0;
  std::uint64_t shots = 0;
};

double estimate(std::mt19937_64& rng, double mean, std::uint64_t shots) {
  const double p = std::clamp(0.5 * (1.0 + mean), 0.0, 1.0);
  std::binomial_distribution<std::uint64_t> plus(shots, p);
  return 2.0 * static_cast<double>(plus(rng)) / static_cast<double>(shots) -
         1.0;
}

VarianceCheck judge(std::string name, std::uint64_t shots, double predicted,
                    double empirical, bool enough, double tolerance) {
  VarianceCheck c{std::move(name), shots, predicted, empirical, std::nullopt};
  if (enough) {
    c.pass = predicted > 0.0
                 ? std::abs(empirical - predicted) <= tolerance * predicted
                 : empirical <= 1e-300;
  }
  return c;
}

}  // namespace

double VarianceCheck::relative_error() const {
  if (predicted > 0.0) return (empirical - predicted) / predicted;
  return empirical > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
}

bool ValidationSummary::all_passed() const {
  return std::none_of(checks.begin(), checks.end(), [](const VarianceCheck& c) {
    return c.pass.has_value() && !*c.pass;
  });
}

double sample_variance(const std::vector<double>& values) {
  if (values.size() < 2) return 0.0;
  double mean = 0.0;
  for (const double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double ss = 0.0;
  for (const double v : values) ss += (v - mean) * (v - mean);
  return ss / static_cast<double>(values.size() - 1);
}

ValidationSummary run_validation(const PauliSum& hamiltonian,
                                 const ValidationOptions& options,
                                 const AnalysisOptions& analysis) {
  if (hamiltonian.n_qubits() > options.max_qubits) {
    throw InputError("validation is limited to " +
                     std::to_string(options.max_qubits) + " qubits");
  }
  if (options.replicas == 0) throw InputError("replicas must be positive");
  if (options.total_shots == 0) throw InputError("shots must be positive");

  const BoostedModel model = prepare_boosted_model(hamiltonian, analysis);
  ValidationSummary summary;
  summary.label = hamiltonian.label;
  summary.n_qubits = hamiltonian.n_qubits();
  summary.alpha = model.alpha;
  summary.energy = model.energy;
  summary.total_shots = options.total_shots;
  summary.replicas = options.replicas;
  summary.seed = options.seed;

  const bool enough = options.replicas >= options.min_replicas;
  if (!enough) {
    summary.warnings.push_back(
        "insufficient replicas (" + std::to_string(options.replicas) + " < " +
        std::to_string(options.min_replicas) + "); no pass/fail assigned");
  }
  if (!model.phi_q) {
    summary.warnings.push_back(
        "ground state equals the reference state; the boosted estimate is "
        "exact and there is nothing to sample");
    summary.mean_lambda = model.energy;
    return summary;
  }
  const Statevector& phi_q = *model.phi_q;
  const BasisState i0 = model.reference;

  summary.k_hf = k_factor_hf_vqe(model.alpha, model.energy,
                                 model.cross_elements, model.overlaps,
                                 model.k_prime, i0);

  std::vector<VarianceTerm> plan_terms = hf_vqe_variance_terms(
      model.alpha, model.energy, model.cross_elements, model.overlaps,
      model.k_prime, i0);
  const bool any_weight =
      std::any_of(plan_terms.begin(), plan_terms.end(),
                  [](const VarianceTerm& t) { return t.weight() > 0.0; });
  if (!any_weight) {
    summary.warnings.push_back(
        "every estimator has zero predicted variance; nothing to sample");
    summary.mean_lambda = model.energy;
    return summary;
  }
  const ShotPlan plan = optimal_allocation(plan_terms, options.total_shots);

  // Overlap observables share the iteration order of hf_vqe_variance_terms.
  std::vector<SampledOverlap> overlaps;
  {
    std::size_t k = 0;
    std::vector<BasisState> keys{i0};
    for (const auto& [j, v] : model.cross_elements) keys.push_back(j);
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    for (const BasisState j : keys) {
      SampledOverlap o;
      o.basis = j;
      o.y = phi_q[j.bits].real();
      auto it = model.cross_elements.find(j);
      o.cross = it == model.cross_elements.end() ? 0.0 : it->second;
      o.shots = plan.terms[k++].shots;
      overlaps.push_back(o);
    }
  }
  const std::uint64_t h22_shots = plan.terms.back().shots;

  // Pauli terms of <phi_q|H|phi_q>, grouped.
  const auto terms = hamiltonian.terms();
  const std::vector<double> means =
      kernels::pauli_expectations(hamiltonian, phi_q.amplitudes());
  const std::vector<double> sigmas =
      group_sigmas(hamiltonian, phi_q, model.groups);
  std::vector<std::uint64_t> group_shots(model.groups.size(), 0);
  double predicted_h22 = 0.0;
  const bool h22_random =
      h22_shots > 0 &&
      std::any_of(sigmas.begin(), sigmas.end(), [](double s) { return s > 0; });
  if (h22_random) {
    std::vector<VarianceTerm> group_terms;
    for (std::size_t g = 0; g < sigmas.size(); ++g) {
      group_terms.push_back({"group", 1.0, sigmas[g] * sigmas[g], 0});
    }
    const ShotPlan gplan = optimal_allocation(group_terms, h22_shots);
    for (std::size_t g = 0; g < sigmas.size(); ++g) {
      group_shots[g] = gplan.terms[g].shots;
    }
    predicted_h22 = gplan.achieved_variance;
  }
  std::vector<SampledTerm> sampled_terms;
  for (std::size_t g = 0; g < model.groups.size(); ++g) {
    for (const std::size_t t : model.groups[g]) {
      sampled_terms.push_back(
          {terms[t].coefficient.real(), means[t], group_shots[g]});
    }
  }
  const double identity = hamiltonian.identity_coefficient();
  double h11 = 0.0;
  if (auto it = model.cross_elements.find(i0);
      it != model.cross_elements.end()) {
    h11 = it->second;
  }
  std::size_t i0_index = 0;
  for (std::size_t k = 0; k < overlaps.size(); ++k) {
    if (overlaps[k].basis == i0) i0_index = k;
  }

  const std::size_t n_rep = options.replicas;
  std::vector<std::vector<double>> y_samples(overlaps.size(),
                                             std::vector<double>(n_rep));
  std::vector<double> h22_samples(n_rep);
  std::vector<double> lambda_samples(n_rep);
  std::atomic<std::uint64_t> failures{0};

#pragma omp parallel for schedule(static)
  for (std::int64_t rr = 0; rr < static_cast<std::int64_t>(n_rep); ++rr) {
    const auto r = static_cast<std::size_t>(rr);
    std::mt19937_64 rng(derive_seed(options.seed, r));
    double h12 = 0.0;
    for (std::size_t k = 0; k < overlaps.size(); ++k) {
      const auto& o = overlaps[k];
      const double y = o.shots > 0 ? estimate(rng, o.y, o.shots) : o.y;
      y_samples[k][r] = y;
      h12 += y * o.cross;
    }
    double h22 = identity;
    for (const auto& t : sampled_terms) {
      h22 += t.coefficient *
             (t.shots > 0 ? estimate(rng, t.mean, t.shots) : t.mean);
    }
    h22_samples[r] = h22;
    const double s12 = y_samples[i0_index][r];
    Eigen::MatrixXd h(2, 2);
    h << h11, h12, h12, h22;
    Eigen::MatrixXd s(2, 2);
    s << 1.0, s12, s12, 1.0;
    try {
      lambda_samples[r] = solve_real_gevp(h, s).eigenvalues(0);
    } catch (const NumericalError&) {
      lambda_samples[r] = std::numeric_limits<double>::quiet_NaN();
      failures.fetch_add(1, std::memory_order_relaxed);
    }
  }

  if (failures.load() > 0) {
    summary.warnings.push_back(
        std::to_string(failures.load()) +
        " replicas produced a singular overlap matrix and were dropped");
    std::erase_if(lambda_samples, [](double v) { return std::isnan(v); });
  }

  BasisMap overlap_vars;
  for (std::size_t k = 0; k < overlaps.size(); ++k) {
    const auto& o = overlaps[k];
    if (o.shots == 0) continue;
    const double predicted = overlap_variance(o.y, o.shots);
    overlap_vars[o.basis] = predicted;
    summary.checks.push_back(judge(
        "Var(y[" + to_bitstring(o.basis, hamiltonian.n_qubits()) + "])",
        o.shots, predicted, sample_variance(y_samples[k]), enough,
        options.tolerance));
  }
  summary.checks.push_back(judge("Var(H22)", h22_shots, predicted_h22,
                                 sample_variance(h22_samples), enough,
                                 options.tolerance));
  const double empirical_lambda = sample_variance(lambda_samples);
  summary.checks.push_back(
      judge("Var(lambda) propagated", options.total_shots,
            propagate_eigenvalue_variance(model.alpha, model.energy,
                                          model.cross_elements, overlap_vars,
                                          predicted_h22, i0),
            empirical_lambda, enough, options.tolerance));
  summary.checks.push_back(judge(
      "Var(lambda) K/M", options.total_shots,
      summary.k_hf / static_cast<double>(options.total_shots),
      empirical_lambda, enough, options.tolerance));

  double mean = 0.0;
  for (const double v : lambda_samples) mean += v;
  summary.mean_lambda =
      lambda_samples.empty() ? 0.0 : mean / static_cast<double>(lambda_samples.size());
  return summary;
}

}  // namespace cbvqe
