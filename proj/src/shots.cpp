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

#include "cbvqe/shots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <tuple>

#include "cbvqe/error.hpp"

namespace cbvqe {

namespace {

void check_alpha(double alpha) {
  if (!std::isfinite(alpha) || std::abs(alpha) > 1.0) {
    throw InputError("overlap alpha must lie in [-1, 1]");
  }
}

double lookup(const BasisMap& m, BasisState key) {
  auto it = m.find(key);
  return it == m.end() ? 0.0 : it->second;
}

// <i|H|i0> - E delta_{i,i0}
double shifted_element(const BasisMap& cross, BasisState i, BasisState i0,
                       double energy) {
  return lookup(cross, i) - (i == i0 ? energy : 0.0);
}

std::set<BasisState> overlap_support(const BasisMap& cross, BasisState i0) {
  std::set<BasisState> keys{i0};
  for (const auto& [k, v] : cross) keys.insert(k);
  return keys;
}

double achieved(const std::vector<VarianceTerm>& terms) {
  double total = 0.0;
  for (const auto& t : terms) {
    const double w = t.weight();
    if (w > 0.0) total += w * w / static_cast<double>(t.shots);
  }
  return total;
}

}  // namespace

double VarianceTerm::weight() const {
  return std::abs(sensitivity) * std::sqrt(std::max(sigma_sq, 0.0));
}

double overlap_variance(double y, std::uint64_t shots) {
  if (shots == 0) throw InputError("overlap variance needs at least one shot");
  if (!std::isfinite(y) || std::abs(y) > 1.0) {
    throw InputError("overlap y must lie in [-1, 1]");
  }
  return (1.0 - y * y) / static_cast<double>(shots);
}

double propagate_eigenvalue_variance(double alpha, double energy,
                                     const BasisMap& cross_elements,
                                     const BasisMap& overlap_vars,
                                     double var_h22, BasisState i0) {
  check_alpha(alpha);
  if (std::abs(alpha) >= 1.0) return 0.0;
  const double v1 = alpha;
  const double v2_sq = 1.0 - alpha * alpha;
  double sum = 0.0;
  for (const auto& [i, var] : overlap_vars) {
    const double d = shifted_element(cross_elements, i, i0, energy);
    sum += d * d * var;
  }
  return 4.0 * v1 * v1 * v2_sq * sum + v2_sq * v2_sq * var_h22;
}

ShotPlan optimal_allocation(std::vector<VarianceTerm> terms,
                            std::uint64_t total_shots) {
  std::vector<std::size_t> active;
  double weight_sum = 0.0;
  for (std::size_t j = 0; j < terms.size(); ++j) {
    terms[j].shots = 0;
    const double w = terms[j].weight();
    if (w > 0.0) {
      active.push_back(j);
      weight_sum += w;
    }
  }
  if (active.empty()) {
    throw InputError("shot allocation needs at least one term with nonzero "
                     "sensitivity and variance");
  }
  if (total_shots < active.size()) {
    throw InputError("cannot give each of " + std::to_string(active.size()) +
                     " observables a shot from a budget of " +
                     std::to_string(total_shots));
  }

  const auto n = static_cast<double>(total_shots);
  std::vector<double> remainder(terms.size(), 0.0);
  std::uint64_t used = 0;
  for (const std::size_t j : active) {
    const double ideal = n * terms[j].weight() / weight_sum;
    const double fl = std::floor(ideal);
    terms[j].shots = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(fl));
    remainder[j] = ideal - fl;
    used += terms[j].shots;
  }
  // Forced minimum shots can overshoot; take them back from the largest.
  while (used > total_shots) {
    auto it = std::max_element(active.begin(), active.end(),
                               [&](std::size_t a, std::size_t b) {
                                 return terms[a].shots < terms[b].shots;
                               });
    --terms[*it].shots;
    --used;
  }
  std::vector<std::size_t> by_remainder = active;
  std::stable_sort(by_remainder.begin(), by_remainder.end(),
                   [&](std::size_t a, std::size_t b) {
                     return remainder[a] > remainder[b];
                   });
  for (std::size_t k = 0; used < total_shots; k = (k + 1) % by_remainder.size()) {
    ++terms[by_remainder[k]].shots;
    ++used;
  }

  // Separable convex objective: single-shot exchanges reach the integer
  // optimum.
  auto cost = [&](std::size_t j, std::uint64_t m) {
    const double w = terms[j].weight();
    return w * w / static_cast<double>(m);
  };
  auto gain = [&](std::size_t j) {
    return cost(j, terms[j].shots) - cost(j, terms[j].shots + 1);
  };
  auto loss = [&](std::size_t j) {
    return terms[j].shots >= 2
               ? cost(j, terms[j].shots - 1) - cost(j, terms[j].shots)
               : std::numeric_limits<double>::infinity();
  };
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  auto best_give = [&](std::size_t skip) {
    std::size_t best = kNone;
    for (const std::size_t j : active) {
      if (j != skip && (best == kNone || gain(j) > gain(best))) best = j;
    }
    return best;
  };
  auto best_take = [&](std::size_t skip) {
    std::size_t best = kNone;
    for (const std::size_t j : active) {
      if (j != skip && (best == kNone || loss(j) < loss(best))) best = j;
    }
    return best;
  };
  // The better of (argmax gain, argmin loss elsewhere) and
  // (argmax gain elsewhere, argmin loss) finds an improving move if any
  // exists.
  while (active.size() > 1) {
    const std::size_t g1 = best_give(kNone);
    const std::size_t t1 = best_take(g1);
    const std::size_t t2 = best_take(kNone);
    const std::size_t g2 = best_give(t2);
    const double d1 = gain(g1) - loss(t1);
    const double d2 = gain(g2) - loss(t2);
    const auto [give, take, delta] =
        d1 >= d2 ? std::tuple{g1, t1, d1} : std::tuple{g2, t2, d2};
    if (!(delta > 1e-15 * achieved(terms))) break;
    ++terms[give].shots;
    --terms[take].shots;
  }

  ShotPlan plan;
  plan.total_shots = total_shots;
  plan.continuum_variance = weight_sum * weight_sum / n;
  plan.achieved_variance = achieved(terms);
  plan.terms = std::move(terms);
  return plan;
}

std::vector<VarianceTerm> hf_vqe_variance_terms(double alpha, double energy,
                                                const BasisMap& cross_elements,
                                                const BasisMap& overlaps,
                                                double k_prime, BasisState i0) {
  check_alpha(alpha);
  const double v2_sq = std::max(0.0, 1.0 - alpha * alpha);
  const double prefactor = 2.0 * alpha * std::sqrt(v2_sq);
  std::vector<VarianceTerm> terms;
  for (const BasisState i : overlap_support(cross_elements, i0)) {
    const double y = std::clamp(lookup(overlaps, i), -1.0, 1.0);
    VarianceTerm t;
    t.label = "y:" + std::to_string(i.bits);
    t.sensitivity = prefactor * shifted_element(cross_elements, i, i0, energy);
    t.sigma_sq = 1.0 - y * y;
    terms.push_back(t);
  }
  VarianceTerm h22;
  h22.label = "H22";
  h22.sensitivity = v2_sq;
  h22.sigma_sq = std::max(k_prime, 0.0);
  terms.push_back(h22);
  return terms;
}

double k_factor_hf_vqe(double alpha, double energy,
                       const BasisMap& cross_elements, const BasisMap& overlaps,
                       double k_prime, BasisState i0) {
  check_alpha(alpha);
  const double v2_sq = std::max(0.0, 1.0 - alpha * alpha);
  double sum = 0.0;
  for (const BasisState i : overlap_support(cross_elements, i0)) {
    const double y = std::clamp(lookup(overlaps, i), -1.0, 1.0);
    sum += std::abs(shifted_element(cross_elements, i, i0, energy)) *
           std::sqrt(1.0 - y * y);
  }
  const double root = 2.0 * alpha * std::sqrt(v2_sq) * sum +
                      v2_sq * std::sqrt(std::max(k_prime, 0.0));
  return root * root;
}

std::vector<double> group_sigmas(const PauliSum& hamiltonian,
                                 const Statevector& psi,
                                 const TermGroups& groups) {
  const auto terms = hamiltonian.terms();
  std::vector<int> seen(terms.size(), 0);
  for (const auto& g : groups) {
    for (const std::size_t t : g) {
      if (t >= terms.size() || terms[t].is_identity()) {
        throw InputError("grouping refers to a missing or identity term");
      }
      ++seen[t];
    }
  }
  for (std::size_t t = 0; t < terms.size(); ++t) {
    if (!terms[t].is_identity() && seen[t] != 1) {
      throw InputError("grouping must place every non-identity term once");
    }
  }

  const std::vector<double> variances = term_variances(hamiltonian, psi);
  std::vector<double> sigmas;
  sigmas.reserve(groups.size());
  for (const auto& g : groups) {
    double s2 = 0.0;
    for (const std::size_t t : g) {
      s2 += std::norm(terms[t].coefficient) * variances[t];
    }
    sigmas.push_back(std::sqrt(s2));
  }
  return sigmas;
}

double k_factor_conventional_vqe(const PauliSum& hamiltonian,
                                 const Statevector& psi,
                                 const TermGroups& groups) {
  const auto sigmas = group_sigmas(hamiltonian, psi, groups);
  const double total = std::accumulate(sigmas.begin(), sigmas.end(), 0.0);
  return total * total;
}

double k_prime_for_h22(const PauliSum& hamiltonian, const Statevector& phi_q,
                       const TermGroups& groups) {
  return k_factor_conventional_vqe(hamiltonian, phi_q, groups);
}

std::uint64_t shots_for_precision(double k_factor, double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw InputError("target precision must be positive");
  }
  if (!(k_factor >= 0.0) || !std::isfinite(k_factor)) {
    throw InputError("K-factor must be finite and non-negative");
  }
  const double q = k_factor / (epsilon * epsilon);
  const double nearest = std::round(q);
  if (std::abs(q - nearest) <= 1e-12 * std::max(1.0, nearest)) {
    return static_cast<std::uint64_t>(nearest);
  }
  return static_cast<std::uint64_t>(std::ceil(q));
}

std::optional<double> speedup(double k_vqe, double k_hf) {
  if (k_hf < 0.0 || k_vqe < 0.0) {
    throw InputError("K-factors must be non-negative");
  }
  if (k_hf == 0.0) return std::nullopt;
  return k_vqe / k_hf;
}

double asymptotic_speedup(double alpha) {
  if (!std::isfinite(alpha) || std::abs(alpha) >= 1.0) {
    throw InputError("asymptotic speedup needs |alpha| < 1");
  }
  const double d = 1.0 - alpha * alpha;
  return 1.0 / (d * d);
}

double asymptotic_ratio(double exact_speedup, double alpha) {
  if (!std::isfinite(alpha) || std::abs(alpha) >= 1.0) {
    throw InputError("asymptotic ratio needs |alpha| < 1");
  }
  const double d = 1.0 - alpha * alpha;
  return exact_speedup * d * d;
}

double bounded_speedup(double alpha, double energy,
                       const BasisMap& cross_elements, double hamiltonian_norm,
                       BasisState i0) {
  check_alpha(alpha);
  if (!(hamiltonian_norm > 0.0)) {
    throw InputError("bounded speedup needs a nonzero Hamiltonian one-norm");
  }
  const double v2_sq = 1.0 - alpha * alpha;
  double sum = 0.0;
  for (const BasisState i : overlap_support(cross_elements, i0)) {
    sum += std::abs(shifted_element(cross_elements, i, i0, energy));
  }
  const double inv_root =
      2.0 * alpha * std::sqrt(v2_sq) * sum / hamiltonian_norm + v2_sq;
  return 1.0 / (inv_root * inv_root);
}

}  // namespace cbvqe
