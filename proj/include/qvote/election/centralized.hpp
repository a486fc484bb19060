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
#include <vector>

#include "qvote/compiler/gate_sequence.hpp"
#include "qvote/election/config.hpp"
#include "qvote/qstate/state_vector.hpp"

namespace qvote {

/// Uniform superposition over the first N basis states of an
/// id_qubit_count(N)-qubit register. Unused IDs keep amplitude 0.
StateVector prepare_id_register(std::size_t num_voters);

/// Throws kConfig when `kind` cannot hold `num_candidates`.
StateVector prepare_candidate_state(CandidateStateKind kind,
                                    std::size_t num_candidates);

/// |IDs> (x) |+> (x) |cands>, laid out per layout_for(config).
StateVector prepare_initial(const ElectionConfig& config);

/// Phase flip on |ID = voter>|control = 1>|candidate = basis_state>.
///
/// Emitted as a single logical op: every pattern bit except the last
/// candidate qubit is a control; the last candidate qubit is the target,
/// carrying Z when its pattern bit is 1 and diag(-1, 1) when it is 0.
GateOp vote_operator(const RegisterLayout& layout, std::size_t voter,
                     std::uint64_t basis_state);

/// Single-machine election: one shared register, votes cast one at a time.
class CentralizedElection {
 public:
  /// Validates `config` and prepares the initial state.
  explicit CentralizedElection(ElectionConfig config);

  /// Applies voter `voter`'s ballot. An abstention changes nothing but still
  /// consumes the voter's slot. Throws kDoubleVote on a repeat and kIndex for
  /// an unknown voter.
  void cast_vote(std::size_t voter, Choice choice);

  bool has_voted(std::size_t voter) const { return voted_.at(voter); }
  const StateVector& state() const noexcept { return state_; }
  /// Logical vote operators applied so far, in order.
  const GateSequence& circuit() const noexcept { return circuit_; }
  const ElectionConfig& config() const noexcept { return config_; }
  const RegisterLayout& layout() const noexcept { return layout_; }

 private:
  ElectionConfig config_;
  RegisterLayout layout_;
  std::vector<std::uint64_t> basis_map_;
  StateVector state_;
  GateSequence circuit_;
  std::vector<bool> voted_;
};

struct ElectionRun {
  StateVector state;
  /// Logical circuit of the voting phase.
  GateSequence circuit;
};

/// Prepares the initial state and casts config.choices in voter order.
ElectionRun run_election(const ElectionConfig& config);

/// The voting circuit lowered to one- and two-control primitives, with
/// ancillas placed after the election register.
GateSequence compile_voting_circuit(const ElectionRun& run,
                                    const RegisterLayout& layout);

}  // namespace qvote
