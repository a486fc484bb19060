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

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qvote {

enum class CandidateStateKind {
  /// (|00> + |11>)/sqrt2, two candidates.
  kBellPair,
  /// (|00> + |01> + |10>)/sqrt3, three candidates.
  kWState,
  /// Equal superposition over the first K basis states of ceil(log2 K) qubits.
  kUniformBasis,
};

std::string_view to_string(CandidateStateKind kind);
std::optional<CandidateStateKind> parse_candidate_state_kind(std::string_view text);
/// bell-pair for K = 2, w-state for K = 3, uniform-basis otherwise.
CandidateStateKind default_candidate_state_kind(std::size_t num_candidates);

/// A ballot: a candidate index, or nullopt for an abstention.
using Choice = std::optional<std::size_t>;

struct ElectionConfig {
  std::size_t num_voters = 0;
  std::size_t num_candidates = 0;
  CandidateStateKind kind = CandidateStateKind::kBellPair;
  std::vector<Choice> choices;
  /// 0 selects exact tallying.
  std::size_t shots = 0;
  std::uint64_t seed = 0;
  /// Candidate-register basis state flipped by a vote for candidate k.
  /// Empty means default_basis_map(kind, K).
  std::vector<std::uint64_t> basis_map;
};

/// Throws kConfig on any invariant violation.
void validate(const ElectionConfig& config);

/// ceil(log2 N), at least 1.
std::size_t id_qubit_count(std::size_t num_voters);
std::size_t candidate_qubit_count(CandidateStateKind kind, std::size_t num_candidates);
/// Number of equal-amplitude basis states in the candidate state.
std::size_t effective_candidates(CandidateStateKind kind, std::size_t num_candidates);
/// Basis states carrying amplitude in the candidate state, in index order.
std::vector<std::uint64_t> candidate_support(CandidateStateKind kind,
                                             std::size_t num_candidates);

/// Bell pair: candidate 0 -> |11>, candidate 1 -> |00>. Otherwise
/// candidate k -> the k-th basis state of the support.
std::vector<std::uint64_t> default_basis_map(CandidateStateKind kind,
                                             std::size_t num_candidates);
std::vector<std::uint64_t> resolved_basis_map(const ElectionConfig& config);

/// Number of non-abstaining voters.
std::size_t participating_votes(const ElectionConfig& config);

/// Register order: [ID (n qubits)] [control] [candidate (m qubits)].
struct RegisterLayout {
  std::size_t id_qubits = 0;
  std::size_t candidate_qubits = 0;

  std::size_t control() const { return id_qubits; }
  std::size_t candidate_first() const { return id_qubits + 1; }
  std::size_t total() const { return id_qubits + 1 + candidate_qubits; }
  std::vector<std::size_t> candidate_register() const;
};

RegisterLayout layout_for(const ElectionConfig& config);

}  // namespace qvote
