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

#include "qvote/election/centralized.hpp"

#include <cmath>
#include <numbers>

#include "qvote/compiler/decompose.hpp"
#include "qvote/errors.hpp"

namespace qvote {

StateVector prepare_id_register(std::size_t num_voters) {
  if (num_voters < 1) fail(ErrorCode::kConfig, "at least one voter is required");
  const std::size_t n = id_qubit_count(num_voters);
  if (n > kMaxQubits) fail(ErrorCode::kCapacity, "too many voters");
  std::vector<Complex> amps(std::size_t{1} << n);
  for (std::size_t j = 0; j < num_voters; ++j) amps[j] = 1.0;
  return StateVector::from_amplitudes(amps);
}

StateVector prepare_candidate_state(CandidateStateKind kind,
                                    std::size_t num_candidates) {
  ElectionConfig probe{.num_voters = 1,
                       .num_candidates = num_candidates,
                       .kind = kind,
                       .choices = {std::nullopt},
                       .basis_map = {}};
  validate(probe);
  const std::size_t m = candidate_qubit_count(kind, num_candidates);
  if (m > kMaxQubits) fail(ErrorCode::kCapacity, "too many candidates");
  std::vector<Complex> amps(std::size_t{1} << m);
  for (std::uint64_t b : candidate_support(kind, num_candidates)) amps[b] = 1.0;
  return StateVector::from_amplitudes(amps);
}

StateVector prepare_initial(const ElectionConfig& config) {
  validate(config);
  const RegisterLayout layout = layout_for(config);
  if (layout.total() > kMaxQubits) {
    fail(ErrorCode::kCapacity,
         "election needs " + std::to_string(layout.total()) + " qubits");
  }
  const double s = std::numbers::sqrt2 / 2.0;
  const std::vector<Complex> plus{s, s};
  return prepare_id_register(config.num_voters)
      .tensor(StateVector::from_amplitudes(plus))
      .tensor(prepare_candidate_state(config.kind, config.num_candidates));
}

GateOp vote_operator(const RegisterLayout& layout, std::size_t voter,
                     std::uint64_t basis_state) {
  std::vector<Control> controls;
  for (std::size_t q = 0; q < layout.id_qubits; ++q) {
    const std::size_t shift = layout.id_qubits - 1 - q;
    controls.push_back({q, ((voter >> shift) & 1U) != 0});
  }
  controls.push_back({layout.control(), true});
  const std::size_t m = layout.candidate_qubits;
  for (std::size_t i = 0; i + 1 < m; ++i) {
    controls.push_back({layout.candidate_first() + i,
                        ((basis_state >> (m - 1 - i)) & 1U) != 0});
  }
  const bool last_bit = (basis_state & 1U) != 0;
  return controlled("VOTE[" + std::to_string(voter) + "]",
                    last_bit ? SingleQubitUnitary::pauli_z()
                             : SingleQubitUnitary::zero_phase(),
                    std::move(controls), layout.candidate_first() + m - 1);
}

CentralizedElection::CentralizedElection(ElectionConfig config)
    : config_(std::move(config)),
      layout_(layout_for(config_)),
      basis_map_(resolved_basis_map(config_)),
      state_(prepare_initial(config_)),
      circuit_(layout_.total()),
      voted_(config_.num_voters, false) {}

void CentralizedElection::cast_vote(std::size_t voter, Choice choice) {
  if (voter >= config_.num_voters) {
    fail(ErrorCode::kIndex, "no voter " + std::to_string(voter));
  }
  if (voted_[voter]) {
    fail(ErrorCode::kDoubleVote,
         "voter " + std::to_string(voter) + " already voted");
  }
  if (choice && *choice >= config_.num_candidates) {
    fail(ErrorCode::kConfig, "no candidate " + std::to_string(*choice));
  }
  voted_[voter] = true;
  if (!choice) return;
  GateOp op = vote_operator(layout_, voter, basis_map_[*choice]);
  state_.apply_controlled({op.controls, op.target}, op.gate);
  circuit_.append(std::move(op));
}

ElectionRun run_election(const ElectionConfig& config) {
  CentralizedElection election(config);
  for (std::size_t j = 0; j < config.num_voters; ++j) {
    election.cast_vote(j, config.choices[j]);
  }
  return {election.state(), election.circuit()};
}

GateSequence compile_voting_circuit(const ElectionRun& run,
                                    const RegisterLayout& layout) {
  return compile_to_primitives(run.circuit, layout.total());
}

}  // namespace qvote
