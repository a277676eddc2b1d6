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

// Release acceptance: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cbvqe/analysis.hpp"
#include "cbvqe/cli.hpp"
#include "cbvqe/error.hpp"
#include "cbvqe/hadamard.hpp"
#include "cbvqe/subspace.hpp"
#include "cbvqe/validation.hpp"
#include "oracles.hpp"

namespace {

using namespace cbvqe;
using Clock = std::chrono::steady_clock;
namespace fs = std::filesystem;

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
  std::printf("[%s] %d: %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<std::string> fixture_names() {
  std::vector<std::string> names;
  for (const auto& e : fs::directory_iterator(CBVQE_FIXTURE_DIR)) {
    if (e.path().extension() == ".json") names.push_back(e.path().stem().string());
  }
  std::sort(names.begin(), names.end());
  return names;
}

std::string fmt_double(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

void criterion1() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  int lo = 99, hi = 0;
  std::string worst_name;
  const auto names = fixture_names();
  for (const auto& name : names) {
    const PauliSum h = load_hamiltonian(oracle::fixture(name));
    lo = std::min(lo, h.n_qubits());
    hi = std::max(hi, h.n_qubits());
    const auto gs = exact_ground_state(h);
    const BasisState i0 = select_reference_state(gs.state, h.n_electrons);
    const Deflation d = deflate_quantum_state(gs.state, i0);
    double lambda;
    if (d.phi_q) {
      lambda = solve_real_gevp(build_two_state_problem(h, i0, *d.phi_q)).eigenvalues(0);
    } else {
      lambda = expectation(h, basis_statevector(i0, h.n_qubits()));
    }
    const double err = std::abs(lambda - gs.energy);
    if (err >= worst) {
      worst = err;
      worst_name = name;
    }
  }
  const double dt = seconds_since(t0);
  const bool ok = names.size() >= 3 && lo >= 2 && hi <= 12 && worst <= 1e-10 && dt < 10.0;
  report(1, ok,
         std::to_string(names.size()) + " fixtures (" + std::to_string(lo) + "-" +
             std::to_string(hi) + " qubits), max |lambda0 - E| = " +
             fmt_double("%.3g", worst) + " (" + worst_name + "), " +
             fmt_double("%.2f", dt) + " s");
}

void criterion2() {
  const auto t0 = Clock::now();
  ValidationOptions opt;
  opt.replicas = 10000;
  opt.total_shots = 100000;
  const ValidationSummary s =
      run_validation(load_hamiltonian(oracle::fixture("synthetic_2q")), opt);
  const double dt = seconds_since(t0);
  const VarianceCheck* km = nullptr;
  for (const auto& c : s.checks) {
    if (c.name == "Var(lambda) K/M") km = &c;
  }
  const bool ok = km && km->pass.value_or(false) &&
                  std::abs(km->relative_error()) <= 0.2 && dt < 120.0;
  report(2, ok,
         km ? "synthetic_2q Var(lambda) " + fmt_double("%.4e", km->empirical) +
                  " vs K/M " + fmt_double("%.4e", km->predicted) + ", rel.err " +
                  fmt_double("%+.4f", km->relative_error()) + ", " +
                  fmt_double("%.2f", dt) + " s"
            : std::string("no K/M check produced"));
}

void criterion3() {
  const auto t0 = Clock::now();
  const std::uint64_t m = 10000;
  const double n = 200.0;
  double worst_z = 0.0;
  std::uint64_t stream = 0;
  for (double y : {-0.9, -0.5, 0.0, 0.5, 0.9}) {
    // A separate seed stream per y keeps the five checks independent.
    const std::uint64_t master = derive_seed(3, stream++);
    const auto obs = make_observable(ObservableKind::kOverlap, y, BasisState{0});
    std::vector<double> v;
    for (int s = 0; s < 200; ++s) {
      v.push_back(sample_estimator(obs, m, derive_seed(master, static_cast<std::uint64_t>(s))).y_hat);
    }
    const double p = 0.5 * (1.0 + y), q = 1.0 - p;
    const double s2 = (1.0 - y * y) / static_cast<double>(m);
    const double mu4 =
        s2 * s2 * (3.0 + (1.0 - 6.0 * p * q) / (static_cast<double>(m) * p * q));
    const double se = std::sqrt((mu4 - (n - 3.0) / (n - 1.0) * s2 * s2) / n);
    worst_z = std::max(worst_z, std::abs(sample_variance(v) - s2) / se);
  }
  const double dt = seconds_since(t0);
  report(3, worst_z <= 3.0 && dt < 30.0,
         "max |Var(y_hat) - (1-y^2)/M| = " + fmt_double("%.2f", worst_z) + " SE, " +
             fmt_double("%.2f", dt) + " s");
}

double plan_variance(const std::vector<VarianceTerm>& terms,
                     const std::vector<std::uint64_t>& shots) {
  double v = 0.0;
  for (std::size_t j = 0; j < terms.size(); ++j) {
    const double w = terms[j].weight();
    if (w == 0.0) continue;
    if (shots[j] == 0) return std::numeric_limits<double>::infinity();
    v += w * w / static_cast<double>(shots[j]);
  }
  return v;
}

void criterion4() {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> size(2, 12);
  std::uniform_int_distribution<std::uint64_t> budget(50, 5000);
  std::uniform_real_distribution<double> a(-3.0, 3.0), s(0.0, 1.0), u(0.0, 1.0);
  int continuum_violations = 0, perturbation_improvements = 0;
  for (int inst = 0; inst < 100; ++inst) {
    std::vector<VarianceTerm> terms(static_cast<std::size_t>(size(rng)));
    for (auto& t : terms) {
      t.sensitivity = a(rng);
      t.sigma_sq = s(rng);
    }
    const std::uint64_t n = budget(rng);
    const ShotPlan plan = optimal_allocation(terms, n);
    // Random integer allocations: a random composition of N.
    for (int r = 0; r < 1000; ++r) {
      std::vector<double> w(terms.size());
      double tot = 0.0;
      for (auto& x : w) tot += (x = u(rng) + 1e-9);
      std::vector<std::uint64_t> shots(terms.size());
      std::uint64_t used = 0;
      for (std::size_t j = 0; j < terms.size(); ++j) {
        shots[j] = static_cast<std::uint64_t>(std::floor(w[j] / tot * static_cast<double>(n)));
        used += shots[j];
      }
      std::uniform_int_distribution<std::size_t> pick(0, terms.size() - 1);
      while (used < n) {
        ++shots[pick(rng)];
        ++used;
      }
      if (plan.continuum_variance > plan_variance(terms, shots) * (1 + 1e-12)) {
        ++continuum_violations;
      }
    }
    std::vector<std::uint64_t> shots;
    for (const auto& t : plan.terms) shots.push_back(t.shots);
    const double base = plan_variance(terms, shots);
    for (std::size_t from = 0; from < shots.size(); ++from) {
      if (shots[from] == 0) continue;
      for (std::size_t to = 0; to < shots.size(); ++to) {
        if (to == from) continue;
        auto moved = shots;
        --moved[from];
        ++moved[to];
        if (plan_variance(terms, moved) < base * (1 - 1e-12)) ++perturbation_improvements;
      }
    }
  }
  report(4, continuum_violations == 0 && perturbation_improvements == 0,
         "100 instances x 1000 random allocations: " +
             std::to_string(continuum_violations) + " below the continuum bound; " +
             std::to_string(perturbation_improvements) + " improving +-1 moves");
}

double fd_eigenvalue(const Eigen::MatrixXd& h, const Eigen::MatrixXd& s, int which, int a, int b,
                     bool wrt_h, double step) {
  auto eval = [&](double delta) {
    Eigen::MatrixXd hh = h, ss = s;
    Eigen::MatrixXd& mm = wrt_h ? hh : ss;
    mm(a, b) += delta;
    if (a != b) mm(b, a) += delta;
    return solve_real_gevp(hh, ss).eigenvalues(which);
  };
  return (eval(step) - eval(-step)) / (2.0 * step);
}

void criterion5() {
  std::mt19937_64 rng(5);
  double worst = 0.0;
  int instances = 0, skipped = 0;
  while (instances < 100) {
    const int k = 1 + instances % 4;
    const Eigen::MatrixXd h = oracle::random_symmetric(k, rng);
    const Eigen::MatrixXd s = oracle::random_spd(k, rng);
    GevpSolution sol;
    try {
      sol = solve_real_gevp(h, s);
    } catch (const NumericalError&) {
      ++skipped;
      continue;
    }
    bool degenerate = false;
    for (int i = 1; i < k; ++i) {
      if (sol.eigenvalues(i) - sol.eigenvalues(i - 1) < 1e-3) degenerate = true;
    }
    if (degenerate) {
      ++skipped;
      continue;
    }
    ++instances;
    for (int which = 0; which < k; ++which) {
      const Sensitivities sens = eigen_sensitivities(sol, which);
      for (int a = 0; a < k; ++a) {
        for (int b = a; b < k; ++b) {
          for (bool wrt_h : {true, false}) {
            const double g = fd_eigenvalue(h, s, which, a, b, wrt_h, 1e-5);
            const double got = wrt_h ? sens.d_h(a, b) : sens.d_s(a, b);
            // Relative error, floored so that vanishing derivatives are
            // compared at the finite-difference noise level.
            worst = std::max(worst, std::abs(got - g) / std::max(std::abs(g), 1e-3));
          }
        }
      }
    }
  }
  report(5, worst <= 1e-5,
         "100 random GEVPs (k<=4, " + std::to_string(skipped) +
             " near-degenerate draws skipped), max rel.err " + fmt_double("%.3g", worst));
}

void criterion6() {
  std::mt19937_64 rng(6);
  int violations = 0;
  double worst_gap = 0.0, worst_real = 0.0;
  for (int t = 0; t < 200; ++t) {
    const int k = 1 + t % 6;
    const auto r = verify_upper_bound(oracle::random_hermitian(k, rng),
                                      oracle::random_hpd(k, rng));
    if (!r.holds || r.lambda_complex > r.lambda_real + 1e-12) ++violations;
    worst_gap = std::max(worst_gap, r.lambda_complex - r.lambda_real);
    const auto e = verify_upper_bound(oracle::random_symmetric(k, rng).cast<Complex>(),
                                      oracle::random_spd(k, rng).cast<Complex>());
    worst_real = std::max(worst_real, std::abs(e.lambda_complex - e.lambda_real));
  }
  report(6, violations == 0 && worst_real <= 1e-12,
         "200 Hermitian pairs: " + std::to_string(violations) +
             " violations (max lambda_c - lambda_r = " + fmt_double("%.3g", worst_gap) +
             "); real inputs max |diff| = " + fmt_double("%.3g", worst_real));
}

void criterion7() {
  const double s = asymptotic_speedup(std::sqrt(0.77));
  const double s0 = asymptotic_speedup(0.0);
  report(7, s >= 18.5 && s <= 19.5 && s0 == 1.0,
         "asymptotic_speedup(sqrt(0.77)) = " + fmt_double("%.6f", s) +
             ", asymptotic_speedup(0) = " + fmt_double("%.17g", s0));
}

void criterion8() {
  const BoostedModel m =
      prepare_boosted_model(load_hamiltonian(oracle::fixture("h2_sto3g")), {});
  std::vector<double> ks;
  for (double a : {0.9, 0.99, 0.999, 0.9999}) {
    ks.push_back(k_factor_hf_vqe(a, m.energy, m.cross_elements, m.overlaps, m.k_prime,
                                 m.reference));
  }
  bool ok = true;
  for (std::size_t j = 1; j < ks.size(); ++j) ok = ok && ks[j] < ks[j - 1];
  ok = ok && ks.back() < 1e-2 * ks.front();
  std::string detail = "h2_sto3g inputs, K =";
  for (double k : ks) detail += " " + fmt_double("%.4g", k);
  report(8, ok, detail);
}

void criterion9() {
  bool ok = true;
  std::string detail;
  for (int n : {4, 8, 16}) {
    const double c = controlled_overhead({n, n, 3.0});
    ok = ok && c == 1.0 + 5.0 / n;
    detail += "N=" + std::to_string(n) + ": " + fmt_double("%.17g", c) + " ";
  }
  report(9, ok, detail + "(expected 1 + 5/N)");
}

void criterion10() {
  int checked = 0;
  std::string bad;
  double min_speedup = std::numeric_limits<double>::infinity();
  double lo = min_speedup, hi = 0.0;
  for (const auto& name : fixture_names()) {
    const AnalysisReport r = analyze(load_hamiltonian(oracle::fixture(name)), {});
    if (r.classically_solved || r.alpha < 0.97) continue;
    ++checked;
    const double s = r.speedup.value_or(0.0);
    const double q = r.asymptotic_ratio.value_or(-1.0);
    min_speedup = std::min(min_speedup, s);
    lo = std::min(lo, q);
    hi = std::max(hi, q);
    if (s < 10.0 || q < 0.01 || q > 10.0) bad += " " + name;
  }
  report(10, checked > 0 && bad.empty(),
         std::to_string(checked) + " fixtures with alpha >= 0.97: min speedup " +
             fmt_double("%.4g", min_speedup) + ", ratio in [" + fmt_double("%.4g", lo) +
             ", " + fmt_double("%.4g", hi) + "]" + (bad.empty() ? "" : "; out of range:" + bad));
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

void criterion11() {
  const fs::path dir = fs::temp_directory_path() / "cbvqe_acceptance";
  fs::create_directories(dir);
  auto analyze_run = [&](const std::string& tag) {
    std::ostringstream out, err;
    run_cli({"analyze", oracle::fixture("h2_sto3g"), oracle::fixture("lih_sto3g_10q"),
             oracle::fixture("synthetic_2q"), "--csv", (dir / (tag + ".csv")).string(),
             "--json", (dir / (tag + ".json")).string()},
            out, err);
    return out.str() + err.str() + slurp(dir / (tag + ".csv")) +
           slurp(dir / (tag + ".json"));
  };
  auto validate_run = [] {
    std::ostringstream out, err;
    run_cli({"validate", "--replicas", "1000", "--seed", "11",
             oracle::fixture("h2_sto3g")},
            out, err);
    return out.str() + err.str();
  };
  const bool same_analyze = analyze_run("a") == analyze_run("b");
  const bool same_validate = validate_run() == validate_run();
  fs::remove_all(dir);
  report(11, same_analyze && same_validate,
         std::string("analyze outputs ") + (same_analyze ? "identical" : "DIFFER") +
             ", validate outputs " + (same_validate ? "identical" : "DIFFER"));
}

}  // namespace

int main() {
  const std::vector<void (*)()> criteria{criterion1, criterion2, criterion3, criterion4,
                                         criterion5, criterion6, criterion7, criterion8,
                                         criterion9, criterion10, criterion11};
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    try {
      criteria[k]();
    } catch (const std::exception& e) {
      report(static_cast<int>(k + 1), false, std::string("exception: ") + e.what());
    }
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
