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

#include "cbvqe/analysis.hpp"

#include <cmath>
#include <sstream>

#include "cbvqe/error.hpp"
#include "cbvqe/hadamard.hpp"

namespace cbvqe {

BoostedModel prepare_boosted_model(const PauliSum& hamiltonian,
                                   const AnalysisOptions& options) {
  GroundStateResult gs = exact_ground_state(hamiltonian, options.ground);
  if (gs.degenerate) {
    std::ostringstream msg;
    msg << "ground state is degenerate (gap " << gs.gap
        << " Ha); boosted sensitivities are undefined";
    throw NumericalError(msg.str());
  }

  BoostedModel model;
  model.energy = gs.energy;
  model.gap = gs.gap;
  model.reference = options.reference
                        ? *options.reference
                        : select_reference_state(gs.state,
                                                 hamiltonian.n_electrons);
  if (model.reference.bits >= hamiltonian.dimension()) {
    throw InputError("reference state does not fit in the register");
  }
  Deflation deflation = deflate_quantum_state(gs.state, model.reference);
  model.alpha = deflation.alpha;
  model.phi_q = std::move(deflation.phi_q);
  model.ground_state = std::move(gs.state);

  for (const auto& [j, value] :
       connected_matrix_elements(hamiltonian, model.reference)) {
    model.cross_elements[j] = value.real();
  }
  model.groups = greedy_grouping(hamiltonian);
  if (model.phi_q) {
    for (const auto& obs :
         build_observables(hamiltonian, model.reference, *model.phi_q)) {
      model.overlaps[obs.basis] = obs.true_value;
    }
    model.k_prime = k_prime_for_h22(hamiltonian, *model.phi_q, model.groups);
  }
  return model;
}

AnalysisReport analyze(const PauliSum& hamiltonian,
                       const AnalysisOptions& options) {
  const BoostedModel model = prepare_boosted_model(hamiltonian, options);

  AnalysisReport report;
  report.label = hamiltonian.label;
  report.n_qubits = hamiltonian.n_qubits();
  report.reference = model.reference;
  report.alpha = model.alpha;
  report.energy = model.energy;
  report.gap = model.gap;
  report.epsilon = options.epsilon;
  report.n_terms = hamiltonian.size();
  report.n_groups = model.groups.size();
  report.n_overlaps = model.overlaps.size();
  report.one_norm = one_norm(hamiltonian);
  const CouplingTerms coupling = terms_coupling_to(hamiltonian, model.reference);
  report.coupling_one_norm = coupling.one_norm_t;
  report.coupling_matrix_element_sum = coupling.matrix_element_sum;
  report.controlled_overhead =
      hamiltonian.n_qubits() >= 2
          ? controlled_overhead({hamiltonian.n_qubits(), hamiltonian.n_qubits(),
                                 3.0})
          : 0.0;

  report.k_vqe =
      k_factor_conventional_vqe(hamiltonian, model.ground_state, model.groups);
  report.m_vqe = shots_for_precision(report.k_vqe, options.epsilon);

  if (!model.phi_q) {
    report.classically_solved = true;
    report.k_hf = 0.0;
    report.m_hfvqe = 0;
    return report;
  }
  report.k_prime = model.k_prime;
  report.k_hf = k_factor_hf_vqe(model.alpha, model.energy, model.cross_elements,
                                model.overlaps, model.k_prime, model.reference);
  report.m_hfvqe = shots_for_precision(report.k_hf, options.epsilon);
  report.speedup = speedup(report.k_vqe, report.k_hf);
  report.asymptotic_speedup = asymptotic_speedup(model.alpha);
  if (report.speedup) {
    report.asymptotic_ratio = asymptotic_ratio(*report.speedup, model.alpha);
  }
  if (report.one_norm > 0.0) {
    report.bounded_speedup =
        bounded_speedup(model.alpha, model.energy, model.cross_elements,
                        report.one_norm, model.reference);
  }
  return report;
}

}  // namespace cbvqe
