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

#include "cbvqe/pauli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "cbvqe/error.hpp"
#include "json.hpp"

namespace cbvqe {

namespace {

using json = nlohmann::json;

struct MaskPairHash {
  std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& p)
      const noexcept {
    return std::hash<std::uint64_t>{}(p.first * 0x9E3779B97F4A7C15ULL ^
                                      p.second);
  }
};

void check_qubit_count(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw InputError("n_qubits must be in [1, " + std::to_string(kMaxQubits) +
                     "], got " + std::to_string(n_qubits));
  }
}

Complex parse_coefficient(const json& value) {
  if (value.is_number()) return {value.get<double>(), 0.0};
  if (value.is_array() && value.size() == 2 && value[0].is_number() &&
      value[1].is_number()) {
    return {value[0].get<double>(), value[1].get<double>()};
  }
  throw InputError("coefficient must be a number or [real, imag]");
}

}  // namespace

std::string to_bitstring(BasisState state, int n_qubits) {
  std::string out(static_cast<std::size_t>(n_qubits), '0');
  for (int q = 0; q < n_qubits; ++q) {
    if ((state.bits >> q) & 1U) out[static_cast<std::size_t>(n_qubits - 1 - q)] = '1';
  }
  return out;
}

BasisState parse_bitstring(std::string_view text, int n_qubits) {
  if (static_cast<int>(text.size()) != n_qubits) {
    throw InputError("bitstring '" + std::string(text) + "' must have " +
                     std::to_string(n_qubits) + " characters");
  }
  std::uint64_t bits = 0;
  for (int q = 0; q < n_qubits; ++q) {
    const char c = text[static_cast<std::size_t>(n_qubits - 1 - q)];
    if (c == '1') {
      bits |= std::uint64_t{1} << q;
    } else if (c != '0') {
      throw InputError("bitstring '" + std::string(text) +
                       "' may only contain 0 and 1");
    }
  }
  return BasisState{bits};
}

std::string PauliTerm::label() const {
  std::string out;
  const std::uint64_t s = support();
  for (int q = 0; q < 64; ++q) {
    if (!((s >> q) & 1U)) continue;
    const bool x = (x_mask >> q) & 1U;
    const bool z = (z_mask >> q) & 1U;
    if (!out.empty()) out += ' ';
    out += (x && z) ? 'Y' : (x ? 'X' : 'Z');
    out += std::to_string(q);
  }
  return out;
}

PauliTerm parse_pauli_string(std::string_view text, int n_qubits) {
  PauliTerm term;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (text[pos] == ' ') {
      ++pos;
      continue;
    }
    const char letter = text[pos];
    if (letter != 'X' && letter != 'Y' && letter != 'Z') {
      throw InputError("malformed Pauli token in '" + std::string(text) + "'");
    }
    std::size_t end = pos + 1;
    while (end < text.size() && text[end] != ' ') ++end;
    const std::string_view digits = text.substr(pos + 1, end - pos - 1);
    int qubit = -1;
    const auto [ptr, ec] =
        std::from_chars(digits.data(), digits.data() + digits.size(), qubit);
    if (digits.empty() || ec != std::errc{} ||
        ptr != digits.data() + digits.size()) {
      throw InputError("malformed Pauli token in '" + std::string(text) + "'");
    }
    if (qubit < 0 || qubit >= n_qubits) {
      throw InputError("qubit index " + std::to_string(qubit) +
                       " out of range for " + std::to_string(n_qubits) +
                       " qubits");
    }
    const std::uint64_t bit = std::uint64_t{1} << qubit;
    if (term.support() & bit) {
      throw InputError("qubit " + std::to_string(qubit) +
                       " repeated in '" + std::string(text) + "'");
    }
    if (letter != 'Z') term.x_mask |= bit;
    if (letter != 'X') term.z_mask |= bit;
    pos = end;
  }
  return term;
}

PauliSum::PauliSum(int n_qubits, std::vector<PauliTerm> terms,
                   double drop_threshold)
    : n_qubits_(n_qubits) {
  check_qubit_count(n_qubits);
  const std::uint64_t allowed =
      n_qubits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_qubits) - 1;
  std::unordered_map<std::pair<std::uint64_t, std::uint64_t>, std::size_t,
                     MaskPairHash>
      position;
  for (const auto& term : terms) {
    if ((term.support() & ~allowed) != 0) {
      throw InputError("term '" + term.label() + "' acts outside " +
                       std::to_string(n_qubits) + " qubits");
    }
    const auto key = std::make_pair(term.x_mask, term.z_mask);
    auto it = position.find(key);
    if (it == position.end()) {
      position.emplace(key, terms_.size());
      terms_.push_back(term);
    } else {
      terms_[it->second].coefficient += term.coefficient;
    }
  }
  std::erase_if(terms_, [&](const PauliTerm& t) {
    return std::abs(t.coefficient) < drop_threshold;
  });
}

bool PauliSum::is_hermitian() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const PauliTerm& t) {
    return t.coefficient.imag() == 0.0;
  });
}

double PauliSum::identity_coefficient() const {
  for (const auto& t : terms_) {
    if (t.is_identity()) return t.coefficient.real();
  }
  return 0.0;
}

PauliSum parse_hamiltonian(std::string_view text,
                           const ParseOptions& options) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("Hamiltonian must be a JSON object");
  if (!doc.contains("n_qubits") || !doc["n_qubits"].is_number_integer()) {
    throw InputError("missing integer field 'n_qubits'");
  }
  const int n_qubits = doc["n_qubits"].get<int>();
  check_qubit_count(n_qubits);
  if (!doc.contains("terms") || !doc["terms"].is_array()) {
    throw InputError("missing array field 'terms'");
  }

  std::vector<PauliTerm> terms;
  terms.reserve(doc["terms"].size());
  for (const auto& entry : doc["terms"]) {
    if (!entry.is_object() || !entry.contains("pauli") ||
        !entry["pauli"].is_string() || !entry.contains("coeff")) {
      throw InputError("each term needs a 'pauli' string and a 'coeff'");
    }
    PauliTerm term =
        parse_pauli_string(entry["pauli"].get<std::string>(), n_qubits);
    term.coefficient = parse_coefficient(entry["coeff"]);
    if (options.require_hermitian && term.coefficient.imag() != 0.0) {
      throw InputError("non-real coefficient on '" + term.label() +
                       "' in a Hermitian Hamiltonian");
    }
    terms.push_back(term);
  }

  PauliSum sum(n_qubits, std::move(terms), options.drop_threshold);
  if (doc.contains("n_electrons") && !doc["n_electrons"].is_null()) {
    if (!doc["n_electrons"].is_number_integer()) {
      throw InputError("'n_electrons' must be an integer or null");
    }
    const int ne = doc["n_electrons"].get<int>();
    if (ne < 0 || ne > n_qubits) {
      throw InputError("'n_electrons' must lie in [0, n_qubits]");
    }
    sum.n_electrons = ne;
  }
  if (doc.contains("label")) {
    if (!doc["label"].is_string()) throw InputError("'label' must be a string");
    sum.label = doc["label"].get<std::string>();
  }
  return sum;
}

PauliSum load_hamiltonian(const std::filesystem::path& path,
                          const ParseOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  PauliSum sum = parse_hamiltonian(buffer.str(), options);
  if (sum.label.empty()) sum.label = path.stem().string();
  return sum;
}

std::string to_json(const PauliSum& hamiltonian) {
  json doc;
  doc["n_qubits"] = hamiltonian.n_qubits();
  doc["n_electrons"] = hamiltonian.n_electrons
                           ? json(*hamiltonian.n_electrons)
                           : json(nullptr);
  doc["label"] = hamiltonian.label;
  json terms = json::array();
  for (const auto& t : hamiltonian.terms()) {
    json coeff = t.coefficient.imag() == 0.0
                     ? json(t.coefficient.real())
                     : json::array({t.coefficient.real(), t.coefficient.imag()});
    terms.push_back({{"pauli", t.label()}, {"coeff", coeff}});
  }
  doc["terms"] = std::move(terms);
  return doc.dump(1);
}

std::map<BasisState, Complex> connected_matrix_elements(
    const PauliSum& hamiltonian, BasisState i0) {
  std::map<BasisState, Complex> elements;
  for (const auto& term : hamiltonian.terms()) {
    const auto [phase, j] = apply_term_to_basis(term, i0);
    elements[j] += phase;
  }
  // Exact cancellations between terms leave only rounding noise.
  std::erase_if(elements, [](const auto& kv) {
    return std::abs(kv.second) < 1e-14;
  });
  return elements;
}

bool qubitwise_commute(const PauliTerm& a, const PauliTerm& b) {
  const std::uint64_t shared = a.support() & b.support();
  const std::uint64_t differ = (a.x_mask ^ b.x_mask) | (a.z_mask ^ b.z_mask);
  return (shared & differ) == 0;
}

TermGroups greedy_grouping(const PauliSum& hamiltonian) {
  const auto terms = hamiltonian.terms();
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (!terms[i].is_identity()) order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return std::abs(terms[a].coefficient) >
                            std::abs(terms[b].coefficient);
                   });

  TermGroups groups;
  for (const std::size_t idx : order) {
    auto fits = [&](const std::vector<std::size_t>& group) {
      return std::all_of(group.begin(), group.end(), [&](std::size_t other) {
        return qubitwise_commute(terms[idx], terms[other]);
      });
    };
    auto it = std::find_if(groups.begin(), groups.end(), fits);
    if (it != groups.end()) {
      it->push_back(idx);
    } else {
      groups.push_back({idx});
    }
  }
  return groups;
}

TermGroups singleton_grouping(const PauliSum& hamiltonian) {
  TermGroups groups;
  const auto terms = hamiltonian.terms();
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (!terms[i].is_identity()) groups.push_back({i});
  }
  return groups;
}

double one_norm(const PauliSum& hamiltonian) {
  double total = 0.0;
  for (const auto& t : hamiltonian.terms()) {
    if (!t.is_identity()) total += std::abs(t.coefficient);
  }
  return total;
}

CouplingTerms terms_coupling_to(const PauliSum& hamiltonian, BasisState i0) {
  CouplingTerms out;
  const auto terms = hamiltonian.terms();
  out.indices.resize(terms.size());
  std::iota(out.indices.begin(), out.indices.end(), std::size_t{0});
  for (const auto& t : terms) out.one_norm_t += std::abs(t.coefficient);
  for (const auto& [j, value] : connected_matrix_elements(hamiltonian, i0)) {
    out.matrix_element_sum += std::abs(value);
  }
  return out;
}

}  // namespace cbvqe
