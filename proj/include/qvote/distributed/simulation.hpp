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
#include <vector>

#include "qvote/distributed/factored_register.hpp"
#include "qvote/distributed/protocol.hpp"
#include "qvote/election/config.hpp"
#include "qvote/election/tally.hpp"
#include "qvote/qstate/rng.hpp"

namespace qvote::distributed {

/// Rounds a voter's ballot may be re-run for in shots mode before it is
/// reported empty.
inline constexpr std::size_t kRetryBudget = 32;
inline constexpr std::size_t kMinVerificationRounds = 10;
inline constexpr std::size_t kDefaultVerificationRounds = 200;
inline constexpr double kDefaultThreshold = 0.5;

enum class VoteExecution {
  /// The vote gate is applied as one controlled phase flip.
  kDirect,
  /// The doubly-controlled flip is expanded into Toffolis and target
  /// factors; the target factors run at the voter, the rest at the center.
  kDecomposed,
};

struct DistributedOptions {
  std::size_t pairs_per_voter = 1;
  VoteExecution execution = VoteExecution::kDirect;
  /// Keep per-voter ballots in voter order in the tally result.
  bool reveal_ballots = false;
};

struct DistributedTally {
  TallyResult aggregate;
  /// Ballots keyed by freshly shuffled anonymous IDs. nullopt entries are
  /// empty ballots (abstentions, or votes not resolved within the budget).
  std::vector<Choice> anonymous_ballots;
  std::size_t empty_ballots = 0;
  /// Difference-sector outcomes that matched no candidate pattern.
  std::size_t unresolved = 0;
  /// Voters whose control qubit landed in the difference sector with a
  /// probability that is neither 0 nor 1 / K_eff (exact mode only).
  std::size_t inconsistent_controls = 0;
  /// Voting rounds run in total, retries included.
  std::size_t rounds_run = 0;
  /// Set only when DistributedOptions::reveal_ballots was requested.
  std::optional<std::vector<Choice>> revealed_ballots;
};

/// A center, N voters and one FIFO quantum channel per voter, stepped
/// deterministically in logical time. Every quantum transfer, gate and
/// measurement is logged to the trace; all randomness derives from the
/// config seed.
class DistributedElection {
 public:
  /// Setup: the center prepares one candidate pair per voter plus
  /// pairs_per_voter - 1 sacrificial Bell pairs, and sends the voter halves.
  /// Adversary actions for the setup stage must be passed here.
  DistributedElection(ElectionConfig config, DistributedOptions options = {},
                      std::vector<AdversaryAction> adversary = {});

  /// Registers an action for later stages. Throws kConfig for unknown
  /// voters or rounds outside the retry budget.
  void inject_adversary(const AdversaryAction& action);

  /// One voting round for voter `voter`. Throws kDoubleVote (after logging
  /// the rejection) if the voter's flag is already set, and kChannelLoss if a
  /// transfer is dropped. Returns the events this round appended.
  std::vector<ProtocolEvent> voting_round(std::size_t voter, Choice choice);

  /// Runs voting_round for every voter with the configured choices.
  void vote_all();

  /// Alternating Z and X correlation rounds on voter `voter`'s sacrificial
  /// pairs: setup pairs first, then pairs the center prepares per round.
  /// Throws kStatistics for fewer than kMinVerificationRounds rounds.
  VerificationResult verify_entanglement(std::size_t voter,
                                         std::size_t rounds = kDefaultVerificationRounds,
                                         double threshold = kDefaultThreshold);

  /// Exact mode inspects each voter's difference-sector amplitudes; shots
  /// mode measures and re-runs a voter's round up to kRetryBudget times.
  /// Throws kProtocolIncomplete if some voter's control never came back.
  DistributedTally tally(TallyMode mode);

  const std::vector<ProtocolEvent>& trace() const noexcept { return trace_; }
  const std::vector<CustodyRecord>& custody() const noexcept { return custody_; }
  const std::vector<QubitHandle>& handles() const noexcept { return handles_; }
  const ElectionConfig& config() const noexcept { return config_; }
  bool flag_set(std::size_t voter) const { return voters_.at(voter).flag_mirror; }
  /// Count of apply-gate events so far.
  std::size_t gates_applied() const noexcept { return gates_applied_; }
  FactoredRegister& backing() noexcept { return register_; }

  /// Global index of voter `voter`'s candidate qubits, voter side first.
  std::vector<std::size_t> candidate_qubits(std::size_t voter) const;
  /// Global index of the stored control qubit, if it came back.
  std::optional<std::size_t> control_qubit(std::size_t voter) const;

 private:
  struct VoterState {
    std::vector<std::size_t> candidate;     // voter side first
    std::vector<std::size_t> spare_pairs;   // first qubit of each unspent pair
    std::optional<std::size_t> control;     // stored at the center
    std::size_t flag = 0;
    bool flag_mirror = false;
    Choice choice;                          // kept for retries
  };

  void setup();
  void check_voter(std::size_t voter) const;
  /// Allocates `state` at the center; returns the first global index.
  std::size_t prepare(const StateVector& state, const std::vector<Lineage>& lineages,
                      std::size_t voter, const std::string& label);
  void log(Party actor, Action action, std::string detail);
  void set_owner(std::size_t qubit, Party owner);
  /// Moves a handle over the voter's channel, firing matching adversary
  /// actions. Throws kChannelLoss when the handle is dropped.
  void transfer(std::size_t qubit, std::size_t voter, Direction direction, Stage stage,
                std::size_t round);
  void apply_single(Party actor, const SingleQubitUnitary& gate, std::size_t qubit,
                    const std::string& label);
  void apply_controlled(Party actor, const std::vector<Control>& controls,
                        std::size_t target, const SingleQubitUnitary& gate,
                        const std::string& label);
  MeasurementRecord measure(Party actor, std::size_t qubit);
  void issue_candidate(std::size_t voter, std::size_t round);
  void run_round(std::size_t voter, Choice choice, std::size_t round);
  void apply_vote(std::size_t voter, std::size_t control, std::uint64_t pattern);

  ElectionConfig config_;
  DistributedOptions options_;
  std::vector<std::uint64_t> basis_;
  std::vector<std::uint64_t> support_;
  std::size_t candidate_width_ = 0;
  std::vector<AdversaryAction> adversary_;
  FactoredRegister register_;
  Rng rng_;
  std::vector<VoterState> voters_;
  std::vector<QubitHandle> handles_;
  std::vector<ProtocolEvent> trace_;
  std::vector<CustodyRecord> custody_;
  std::uint64_t clock_ = 0;
  std::size_t gates_applied_ = 0;
  std::size_t rounds_run_ = 0;
  bool tallied_ = false;
};

}  // namespace qvote::distributed
