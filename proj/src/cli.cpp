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

#include "cbvqe/cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>

#include "cbvqe/error.hpp"

namespace cbvqe {

namespace {

std::string num(double v) { return fmt::format("{:.17g}", v); }

std::string opt_num(const std::optional<double>& v) {
  return v ? num(*v) : std::string();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (const char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

struct Outcome {
  std::optional<AnalysisReport> report;
  std::string error;
  int code = kExitOk;
};

// Files are independent; results land in input order.
std::vector<Outcome> analyze_files(const std::vector<std::string>& files,
                                   const AnalysisOptions& base,
                                   const std::optional<std::string>& hf_state) {
  std::vector<Outcome> outcomes(files.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t k = 0; k < static_cast<std::int64_t>(files.size()); ++k) {
    Outcome& o = outcomes[static_cast<std::size_t>(k)];
    const std::string& file = files[static_cast<std::size_t>(k)];
    try {
      const PauliSum h = load_hamiltonian(file);
      AnalysisOptions options = base;
      if (hf_state) options.reference = parse_bitstring(*hf_state, h.n_qubits());
      o.report = analyze(h, options);
    } catch (const InputError& e) {
      o.error = file + ": " + e.what();
      o.code = kExitInput;
    } catch (const NumericalError& e) {
      o.error = file + ": " + e.what();
      o.code = kExitNumerical;
    } catch (const std::exception& e) {
      o.error = file + ": " + e.what();
      o.code = kExitNumerical;
    }
  }
  return outcomes;
}

int worst(const std::vector<Outcome>& outcomes) {
  int code = kExitOk;
  for (const auto& o : outcomes) {
    if (o.code == kExitInput) return kExitInput;
    code = std::max(code, o.code);
  }
  return code;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot open " + path + " for writing");
  f << text;
  if (!f) throw InputError("failed writing " + path);
}

std::string human_report(const AnalysisReport& r) {
  std::string s;
  s += fmt::format("== {} ({} qubits)\n", r.label, r.n_qubits);
  s += fmt::format("  reference state      {}\n",
                   to_bitstring(r.reference, r.n_qubits));
  s += fmt::format("  E_exact              {:.10f} Ha\n", r.energy);
  s += fmt::format("  spectral gap         {:.6g} Ha\n", r.gap);
  s += fmt::format("  alpha                {:.8f}\n", r.alpha);
  s += fmt::format("  terms / groups       {} / {}\n", r.n_terms, r.n_groups);
  s += fmt::format("  overlap observables  {}\n", r.n_overlaps);
  s += fmt::format("  epsilon              {:g} Ha\n", r.epsilon);
  s += fmt::format("  K_vqe                {:.6g}\n", r.k_vqe);
  s += fmt::format("  M_vqe                {}\n", r.m_vqe);
  if (r.classically_solved) {
    s += "  status               classically solved\n";
    s += "  M_hfvqe              0\n";
  } else {
    s += fmt::format("  K_hf                 {:.6g}\n", r.k_hf);
    s += fmt::format("  M_hfvqe              {}\n", r.m_hfvqe);
  }
  if (r.speedup) s += fmt::format("  speedup              {:.6g}\n", *r.speedup);
  if (r.asymptotic_speedup) {
    s += fmt::format("  asymptotic speedup   {:.6g}\n", *r.asymptotic_speedup);
  }
  if (r.asymptotic_ratio) {
    s += fmt::format("  asymptotic ratio     {:.6g}\n", *r.asymptotic_ratio);
  }
  if (r.bounded_speedup) {
    s += fmt::format("  unit-variance bound  {:.6g}\n", *r.bounded_speedup);
  }
  if (r.controlled_overhead > 0.0) {
    s += fmt::format("  controlled overhead  {:.6g}\n", r.controlled_overhead);
  }
  return s;
}

AnalysisOptions base_options(double epsilon) {
  if (!(epsilon > 0.0)) throw InputError("epsilon must be positive");
  AnalysisOptions options;
  options.epsilon = epsilon;
  options.ground.max_qubits = qubit_cap_from_env();
  return options;
}

int cmd_analyze(const std::vector<std::string>& files, double epsilon,
                const std::optional<std::string>& hf_state,
                const std::optional<std::string>& csv_path,
                const std::optional<std::string>& json_path, std::ostream& out,
                std::ostream& err) {
  const auto outcomes = analyze_files(files, base_options(epsilon), hf_state);
  std::vector<AnalysisReport> reports;
  std::string csv = std::string(kAnalyzeCsvHeader) + "\n";
  for (const auto& o : outcomes) {
    if (!o.report) {
      err << "error: " << o.error << "\n";
      continue;
    }
    out << human_report(*o.report);
    csv += analyze_csv_row(*o.report) + "\n";
    reports.push_back(*o.report);
  }
  if (csv_path) write_file(*csv_path, csv);
  if (json_path) write_file(*json_path, report_json(reports) + "\n");
  return worst(outcomes);
}

int cmd_sweep(const std::vector<std::string>& files, double epsilon,
              const std::optional<std::string>& csv_path, std::ostream& out,
              std::ostream& err) {
  const auto outcomes = analyze_files(files, base_options(epsilon), std::nullopt);
  std::vector<AnalysisReport> reports;
  for (const auto& o : outcomes) {
    if (o.report) {
      reports.push_back(*o.report);
    } else {
      err << "error: " << o.error << "\n";
    }
  }
  std::stable_sort(reports.begin(), reports.end(),
                   [](const AnalysisReport& a, const AnalysisReport& b) {
                     return a.n_qubits < b.n_qubits;
                   });
  std::string csv = std::string(kSweepCsvHeader) + "\n";
  for (const auto& r : reports) csv += sweep_csv_row(r) + "\n";
  out << csv;
  if (csv_path) write_file(*csv_path, csv);
  return worst(outcomes);
}

int cmd_validate(const std::string& file, std::uint64_t shots,
                 std::uint64_t replicas, std::uint64_t seed,
                 std::ostream& out) {
  const PauliSum h = load_hamiltonian(file);
  ValidationOptions options;
  options.total_shots = shots;
  options.replicas = replicas;
  options.seed = seed;
  options.max_qubits = std::min(options.max_qubits, qubit_cap_from_env());
  AnalysisOptions analysis = base_options(1e-3);
  const ValidationSummary s = run_validation(h, options, analysis);

  out << fmt::format("== {} ({} qubits)\n", s.label, s.n_qubits);
  out << fmt::format("  alpha {:.8f}  E_exact {:.10f} Ha  K_hf {:.6g}\n",
                     s.alpha, s.energy, s.k_hf);
  out << fmt::format("  shots {}  replicas {}  seed {}\n", s.total_shots,
                     s.replicas, s.seed);
  out << fmt::format("  mean lambda {:.10f} Ha\n", s.mean_lambda);
  if (!s.checks.empty()) {
    out << fmt::format("  {:<28} {:>9} {:>13} {:>13} {:>9}  {}\n", "quantity",
                       "shots", "predicted", "empirical", "rel.err", "result");
  }
  for (const auto& c : s.checks) {
    const std::string verdict = !c.pass ? "-" : (*c.pass ? "pass" : "FAIL");
    out << fmt::format("  {:<28} {:>9} {:>13.6e} {:>13.6e} {:>+9.4f}  {}\n",
                       c.name, c.shots, c.predicted, c.empirical,
                       c.relative_error(), verdict);
  }
  for (const auto& w : s.warnings) out << "  warning: " << w << "\n";
  const bool judged = std::any_of(s.checks.begin(), s.checks.end(),
                                  [](const auto& c) { return c.pass; });
  if (judged) out << (s.all_passed() ? "  all checks pass\n" : "  some checks FAIL\n");
  return kExitOk;
}

}  // namespace

std::string analyze_csv_row(const AnalysisReport& r) {
  return fmt::format("{},{},{},{},{},{},{},{},{}", csv_field(r.label),
                     r.n_qubits, num(r.alpha), num(r.energy), r.m_vqe,
                     r.m_hfvqe, opt_num(r.speedup),
                     opt_num(r.asymptotic_speedup),
                     opt_num(r.asymptotic_ratio));
}

std::string sweep_csv_row(const AnalysisReport& r) {
  return fmt::format("{},{},{},{},{}", csv_field(r.label), r.n_qubits,
                     num(r.alpha), opt_num(r.speedup),
                     opt_num(r.asymptotic_ratio));
}

std::string report_json(const std::vector<AnalysisReport>& reports) {
  using nlohmann::json;
  auto opt = [](const std::optional<double>& v) -> json {
    return v ? json(*v) : json(nullptr);
  };
  json arr = json::array();
  for (const auto& r : reports) {
    arr.push_back({
        {"label", r.label},
        {"n_qubits", r.n_qubits},
        {"reference", to_bitstring(r.reference, r.n_qubits)},
        {"classically_solved", r.classically_solved},
        {"alpha", r.alpha},
        {"E_exact", r.energy},
        {"gap", r.gap},
        {"epsilon", r.epsilon},
        {"K_vqe", r.k_vqe},
        {"K_hfvqe", r.k_hf},
        {"K_prime", r.k_prime},
        {"M_vqe", r.m_vqe},
        {"M_hfvqe", r.m_hfvqe},
        {"speedup", opt(r.speedup)},
        {"asymptotic_speedup", opt(r.asymptotic_speedup)},
        {"asymptotic_ratio", opt(r.asymptotic_ratio)},
        {"unit_variance_speedup", opt(r.bounded_speedup)},
        {"n_terms", r.n_terms},
        {"n_groups", r.n_groups},
        {"n_overlaps", r.n_overlaps},
        {"one_norm", r.one_norm},
        {"controlled_overhead", r.controlled_overhead},
    });
  }
  return arr.dump(2);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Measurement cost of single-determinant boosted VQE"};
  app.require_subcommand(1);

  double epsilon = 1e-3;
  std::optional<std::string> hf_state, csv_path, json_path;
  std::vector<std::string> files;
  auto* analyze_cmd =
      app.add_subcommand("analyze", "shot counts for boosted vs plain VQE");
  analyze_cmd->add_option("--epsilon", epsilon, "target precision (Ha)");
  analyze_cmd->add_option("--hf-state", hf_state,
                          "reference bitstring, qubit 0 right-most");
  analyze_cmd->add_option("--csv", csv_path, "write CSV here");
  analyze_cmd->add_option("--json", json_path, "write JSON here");
  analyze_cmd->add_option("files", files, "Hamiltonian files")->required();

  std::uint64_t shots = 100000, replicas = 10000, seed = 1;
  std::string validate_file;
  auto* validate_cmd = app.add_subcommand(
      "validate", "Monte Carlo check of the predicted variances");
  validate_cmd->add_option("--shots", shots, "total shots per replica");
  validate_cmd->add_option("--replicas", replicas, "number of replicas");
  validate_cmd->add_option("--seed", seed, "master seed");
  validate_cmd->add_option("file", validate_file, "Hamiltonian file")
      ->required();

  auto* sweep_cmd =
      app.add_subcommand("sweep", "speedup and ratio per file, as CSV");
  sweep_cmd->add_option("--epsilon", epsilon, "target precision (Ha)");
  sweep_cmd->add_option("--csv", csv_path, "also write CSV here");
  sweep_cmd->add_option("files", files, "Hamiltonian files")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*analyze_cmd) {
      return cmd_analyze(files, epsilon, hf_state, csv_path, json_path, out,
                         err);
    }
    if (*validate_cmd) {
      return cmd_validate(validate_file, shots, replicas, seed, out);
    }
    return cmd_sweep(files, epsilon, csv_path, out, err);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int k = 1; k < argc; ++k) args.emplace_back(argv[k]);
  return run_cli(args, out, err);
}

}  // namespace cbvqe
