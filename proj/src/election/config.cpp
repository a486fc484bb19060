// Copyright 2026 The qvote Authors
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

#include "qvote/election/config.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "qvote/errors.hpp"

namespace qvote {

std::string_view to_string(CandidateStateKind kind) {
  switch (kind) {
    case CandidateStateKind::kBellPair: return "bell-pair";
    case CandidateStateKind::kWState: return "w-state";
    case CandidateStateKind::kUniformBasis: return "uniform-basis";
  }
  return "unknown";
}

std::optional<CandidateStateKind> parse_candidate_state_kind(std::string_view text) {
  if (text == "bell-pair") return CandidateStateKind::kBellPair;
  if (text == "w-state") return CandidateStateKind::kWState;
  if (text == "uniform-basis") return CandidateStateKind::kUniformBasis;
  return std::nullopt;
}

CandidateStateKind default_candidate_state_kind(std::size_t num_candidates) {
  if (num_candidates == 2) return CandidateStateKind::kBellPair;
  if (num_candidates == 3) return CandidateStateKind::kWState;
  return CandidateStateKind::kUniformBasis;
}

std::size_t id_qubit_count(std::size_t num_voters) {
  if (num_voters <= 2) return 1;
  return static_cast<std::size_t>(std::bit_width(num_voters - 1));
}

std::size_t candidate_qubit_count(CandidateStateKind kind,
                                  std::size_t num_candidates) {
  switch (kind) {
    case CandidateStateKind::kBellPair:
    case CandidateStateKind::kWState:
      return 2;
    case CandidateStateKind::kUniformBasis:
      return id_qubit_count(num_candidates);
  }
  return 0;
}

std::size_t effective_candidates(CandidateStateKind kind,
                                 std::size_t num_candidates) {
  switch (kind) {
    case CandidateStateKind::kBellPair: return 2;
    case CandidateStateKind::kWState: return 3;
    case CandidateStateKind::kUniformBasis: return num_candidates;
  }
  return 0;
}

std::vector<std::uint64_t> candidate_support(CandidateStateKind kind,
                                             std::size_t num_candidates) {
  switch (kind) {
    case CandidateStateKind::kBellPair: return {0b00, 0b11};
    case CandidateStateKind::kWState: return {0b00, 0b01, 0b10};
    case CandidateStateKind::kUniformBasis: {
      std::vector<std::uint64_t> support(num_candidates);
      for (std::size_t k = 0; k < num_candidates; ++k) support[k] = k;
      return support;
    }
  }
  return {};
}

std::vector<std::uint64_t> default_basis_map(CandidateStateKind kind,
                                             std::size_t num_candidates) {
  if (kind == CandidateStateKind::kBellPair) return {0b11, 0b00};
  return candidate_support(kind, num_candidates);
}

std::vector<std::uint64_t> resolved_basis_map(const ElectionConfig& config) {
  if (!config.basis_map.empty()) return config.basis_map;
  return default_basis_map(config.kind, config.num_candidates);
}

std::size_t participating_votes(const ElectionConfig& config) {
  return static_cast<std::size_t>(std::count_if(
      config.choices.begin(), config.choices.end(),
      [](const Choice& c) { return c.has_value(); }));
}

void validate(const ElectionConfig& config) {
  auto reject = [](const std::string& why) { fail(ErrorCode::kConfig, why); };
  if (config.num_voters < 1) reject("at least one voter is required");
  if (config.num_candidates < 2) reject("at least two candidates are required");
  if (config.kind == CandidateStateKind::kBellPair && config.num_candidates != 2) {
    reject("bell-pair candidate state requires exactly 2 candidates");
  }
  if (config.kind == CandidateStateKind::kWState && config.num_candidates != 3) {
    reject("w-state candidate state requires exactly 3 candidates");
  }
  if (config.choices.size() != config.num_voters) {
    reject("expected " + std::to_string(config.num_voters) + " choices, got " +
           std::to_string(config.choices.size()));
  }
  for (std::size_t j = 0; j < config.choices.size(); ++j) {
    const Choice& c = config.choices[j];
    if (c && *c >= config.num_candidates) {
      reject("voter " + std::to_string(j) + " chose candidate " +
             std::to_string(*c) + " of " + std::to_string(config.num_candidates));
    }
  }
  if (!config.basis_map.empty()) {
    if (config.basis_map.size() != config.num_candidates) {
      reject("basis map must list one basis state per candidate");
    }
    const auto support = candidate_support(config.kind, config.num_candidates);
    std::set<std::uint64_t> seen;
    for (std::uint64_t b : config.basis_map) {
      if (std::find(support.begin(), support.end(), b) == support.end()) {
        reject("basis state " + std::to_string(b) +
               " has no amplitude in the candidate state");
      }
      if (!seen.insert(b).second) reject("basis map entries must be distinct");
    }
  }
}

std::vector<std::size_t> RegisterLayout::candidate_register() const {
  std::vector<std::size_t> qubits(candidate_qubits);
  for (std::size_t i = 0; i < candidate_qubits; ++i) {
    qubits[i] = candidate_first() + i;
  }
  return qubits;
}

RegisterLayout layout_for(const ElectionConfig& config) {
  return {.id_qubits = id_qubit_count(config.num_voters),
          .candidate_qubits =
              candidate_qubit_count(config.kind, config.num_candidates)};
}

}  // namespace qvote
