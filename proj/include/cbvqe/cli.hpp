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

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cbvqe/analysis.hpp"
#include "cbvqe/validation.hpp"

namespace cbvqe {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitNumerical = 2;

inline constexpr const char* kAnalyzeCsvHeader =
    "label,n_qubits,alpha,E_exact,M_vqe,M_hfvqe,speedup,asymptotic_speedup,"
    "asymptotic_ratio";
inline constexpr const char* kSweepCsvHeader =
    "label,n_qubits,alpha,speedup,asymptotic_ratio";

/// One CSV row (no newline) in kAnalyzeCsvHeader order.
std::string analyze_csv_row(const AnalysisReport& report);
std::string sweep_csv_row(const AnalysisReport& report);
std::string report_json(const std::vector<AnalysisReport>& reports);

/// Entry point behind the `cbvqe` executable. Returns the process exit code.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);
/// Same, with argv[0] omitted.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace cbvqe
