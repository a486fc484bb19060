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

#include "qvote/distributed/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <string>

#include "qvote/compiler/decompose.hpp"
#include "qvote/election/centralized.hpp"
#include "qvote/errors.hpp"

namespace qvote::distributed {
namespace {

std::string number(double value) {
  std::ostringstream out;
  out << std::setprecision(17) << value;
  return out.str();
}

std::string qubit_list(std::size_t first, std::size_t count) {
  std::string out;
  for (std::size_t i = 0; i < count; ++i) {
    if (i) out += ",";
    out += std::to_string(first + i);
  }
  return out;
}

std::string bits_of(std::uint64_t pattern, std::size_t width) {
  std::string out(width, '0');
  for (std::size_t i = 0; i < width; ++i) {
    if ((pattern >> (width - 1 - i)) & 1U) out[i] = '1';
  }
  return out;
}

bool filter_matches(TargetFilter filter, Lineage lineage) {
  switch (filter) {
    case TargetFilter::kAny:
      return true;
    case TargetFilter::kCandidate:
      return lineage == Lineage::kCandidateVoterSide ||
             lineage == Lineage::kCandidateCenterSide;
    case TargetFilter::kVerification:
      return lineage == Lineage::kVerificationPair;
    case TargetFilter::kControl:
      return lineage == Lineage::kControl;
  }
  return false;
}

StateVector bell_pair() {
  const double s = 1.0 / std::sqrt(2.0);
  const Complex amps[] = {s, 0.0, 0.0, s};
  return StateVector::from_amplitudes(amps);
}

StateVector plus_state() {
  const double s = 1.0 / std::sqrt(2.0);
  const Complex amps[] = {s, s};
  return StateVector::from_amplitudes(amps);
}

}  // namespace

DistributedElection::DistributedElection(ElectionConfig config, DistributedOptions options,
                                         std::vector<AdversaryAction> adversary)
    : config_(std::move(config)),
      options_(options),
      rng_(config_.seed) {
  validate(config_);
  if (options_.pairs_per_voter < 1) fail(ErrorCode::kConfig, "pairs_per_voter must be >= 1");
  for (const AdversaryAction& a : adversary) inject_adversary(a);
  setup();
}

void DistributedElection::setup() {
  const std::size_t n = config_.num_voters;
  candidate_width_ = candidate_qubit_count(config_.kind, config_.num_candidates);
  if (options_.execution == VoteExecution::kDecomposed && candidate_width_ != 2) {
    fail(ErrorCode::kConfig, "decomposed execution needs a two-qubit candidate register");
  }
  const std::size_t per_voter = candidate_width_ + 2 * (options_.pairs_per_voter - 1);
  if (n * per_voter > kMaxQubits) {
    fail(ErrorCode::kCapacity, std::to_string(n) + " voters x " + std::to_string(per_voter) +
                                   " qubits exceeds the " + std::to_string(kMaxQubits) +
                                   "-qubit cap");
  }
  basis_ = resolved_basis_map(config_);
  support_ = candidate_support(config_.kind, config_.num_candidates);
  voters_.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    issue_candidate(j, 0);
    for (std::size_t p = 1; p < options_.pairs_per_voter; ++p) {
      const std::size_t first = prepare(
          bell_pair(), {Lineage::kVerificationPair, Lineage::kVerificationPair}, j, "bell");
      transfer(first, j, Direction::kToVoter, Stage::kSetup, 0);
      voters_[j].spare_pairs.push_back(first);
    }
    voters_[j].flag = prepare(StateVector::zero(1), {Lineage::kFlag}, j, "zero");
  }
}

void DistributedElection::inject_adversary(const AdversaryAction& action) {
  const Trigger& t = action.trigger;
  if (t.voter >= config_.num_voters) {
    fail(ErrorCode::kConfig, "adversary targets channel " + std::to_string(t.voter) +
                                 " of " + std::to_string(config_.num_voters));
  }
  if (t.round && t.stage != Stage::kVerification && *t.round >= kRetryBudget) {
    fail(ErrorCode::kConfig, "adversary round " + std::to_string(*t.round) +
                                 " is beyond the retry budget");
  }
  if (t.round && t.stage == Stage::kSetup && *t.round == 0 && !voters_.empty()) {
    fail(ErrorCode::kConfig, "setup round 0 has already run");
  }
  adversary_.push_back(action);
}

void DistributedElection::check_voter(std::size_t voter) const {
  if (voter >= voters_.size()) {
    fail(ErrorCode::kIndex, "no voter " + std::to_string(voter));
  }
}

std::vector<std::size_t> DistributedElection::candidate_qubits(std::size_t voter) const {
  check_voter(voter);
  return voters_[voter].candidate;
}

std::optional<std::size_t> DistributedElection::control_qubit(std::size_t voter) const {
  check_voter(voter);
  return voters_[voter].control;
}

void DistributedElection::log(Party actor, Action action, std::string detail) {
  trace_.push_back({trace_.size(), actor, action, clock_++, std::move(detail)});
}

void DistributedElection::set_owner(std::size_t qubit, Party owner) {
  handles_.at(qubit).owner = owner;
  custody_.push_back({trace_.back().seq, qubit, owner});
}

std::size_t DistributedElection::prepare(const StateVector& state,
                                         const std::vector<Lineage>& lineages,
                                         std::size_t voter, const std::string& label) {
  const std::size_t first = register_.allocate(state);
  log(Party::center(), Action::kPrepare,
      "qubits=" + qubit_list(first, lineages.size()) + " voter=" + std::to_string(voter) +
          " lineage=" + std::string(to_string(lineages.front())) + " state=" + label);
  for (std::size_t i = 0; i < lineages.size(); ++i) {
    handles_.push_back({first + i, Party::center(), lineages[i], voter});
    set_owner(first + i, Party::center());
  }
  return first;
}

void DistributedElection::transfer(std::size_t qubit, std::size_t voter,
                                   Direction direction, Stage stage, std::size_t round) {
  const Party from = direction == Direction::kToVoter ? Party::center() : Party::voter_at(voter);
  const Party to = direction == Direction::kToVoter ? Party::voter_at(voter) : Party::center();
  const Lineage lineage = handles_.at(qubit).lineage;
  const std::string where = "qubits=" + std::to_string(qubit) + " channel=" +
                            std::to_string(voter);
  log(from, Action::kSend,
      where + " to=" + to_string(to) + " lineage=" + std::string(to_string(lineage)) +
          " stage=" + std::string(to_string(stage)) + " round=" + std::to_string(round));
  set_owner(qubit, Party::channel(voter));

  for (const AdversaryAction& a : adversary_) {
    const Trigger& t = a.trigger;
    if (t.voter != voter || t.direction != direction || t.stage != stage) continue;
    if (t.round && *t.round != round) continue;
    if (!filter_matches(t.target, lineage)) continue;
    const std::string kind = "kind=" + std::string(to_string(a.kind)) + " qubit=" +
                             std::to_string(qubit);
    switch (a.kind) {
      case AdversaryAction::Kind::kMeasure: {
        const bool x = a.basis == AdversaryAction::Basis::kX;
        if (x) register_.apply_single(SingleQubitUnitary::hadamard(), qubit);
        const MeasurementRecord r = register_.measure(qubit, rng_);
        if (x) register_.apply_single(SingleQubitUnitary::hadamard(), qubit);
        log(Party::adversary(), Action::kAdversary,
            kind + " basis=" + (x ? "x" : "z") + " outcome=" + std::to_string(r.outcome));
        break;
      }
      case AdversaryAction::Kind::kPhaseTamper:
        register_.apply_single(SingleQubitUnitary::phase(a.angle), qubit);
        log(Party::adversary(), Action::kAdversary, kind + " angle=" + number(a.angle));
        break;
      case AdversaryAction::Kind::kBitFlip:
        register_.apply_single(SingleQubitUnitary::pauli_x(), qubit);
        log(Party::adversary(), Action::kAdversary, kind);
        break;
      case AdversaryAction::Kind::kSwapWithFresh: {
        const std::size_t fresh = register_.allocate(StateVector::zero(1));
        log(Party::adversary(), Action::kPrepare,
            "qubits=" + std::to_string(fresh) + " voter=" + std::to_string(voter) +
                " lineage=fresh state=zero");
        handles_.push_back({fresh, Party::adversary(), Lineage::kFresh, voter});
        set_owner(fresh, Party::adversary());
        register_.swap(qubit, fresh);
        log(Party::adversary(), Action::kAdversary, kind + " kept=" + std::to_string(fresh));
        break;
      }
      case AdversaryAction::Kind::kLoss:
        log(Party::channel(voter), Action::kLoss, where);
        set_owner(qubit, Party::lost());
        fail(ErrorCode::kChannelLoss, "qubit " + std::to_string(qubit) +
                                          " lost on channel " + std::to_string(voter));
      case AdversaryAction::Kind::kDelay:
        clock_ += a.delay;
        log(Party::adversary(), Action::kAdversary, kind + " ticks=" + std::to_string(a.delay));
        break;
    }
  }

  log(to, Action::kReceive, where);
  set_owner(qubit, to);
}

void DistributedElection::apply_single(Party actor, const SingleQubitUnitary& gate,
                                       std::size_t qubit, const std::string& label) {
  register_.apply_single(gate, qubit);
  log(actor, Action::kApplyGate, "gate=" + label + " target=" + std::to_string(qubit));
  ++gates_applied_;
}

void DistributedElection::apply_controlled(Party actor, const std::vector<Control>& controls,
                                           std::size_t target,
                                           const SingleQubitUnitary& gate,
                                           const std::string& label) {
  register_.apply_controlled(controls, target, gate);
  std::string detail = "gate=" + label + " target=" + std::to_string(target) + " controls=";
  for (std::size_t i = 0; i < controls.size(); ++i) {
    if (i) detail += ",";
    detail += std::to_string(controls[i].qubit) + ":" + (controls[i].value ? "1" : "0");
  }
  log(actor, Action::kApplyGate, detail);
  ++gates_applied_;
}

MeasurementRecord DistributedElection::measure(Party actor, std::size_t qubit) {
  const MeasurementRecord r = register_.measure(qubit, rng_);
  log(actor, Action::kMeasure,
      "qubit=" + std::to_string(qubit) + " outcome=" + std::to_string(r.outcome));
  return r;
}

void DistributedElection::issue_candidate(std::size_t voter, std::size_t round) {
  std::vector<Lineage> lineages(candidate_width_, Lineage::kCandidateCenterSide);
  lineages.front() = Lineage::kCandidateVoterSide;
  const std::size_t first =
      prepare(prepare_candidate_state(config_.kind, config_.num_candidates), lineages, voter,
              std::string(to_string(config_.kind)));
  voters_[voter].candidate.clear();
  for (std::size_t i = 0; i < candidate_width_; ++i) {
    voters_[voter].candidate.push_back(first + i);
  }
  transfer(first, voter, Direction::kToVoter, Stage::kSetup, round);
}

void DistributedElection::apply_vote(std::size_t voter, std::size_t control,
                                     std::uint64_t pattern) {
  const std::vector<std::size_t>& cand = voters_[voter].candidate;
  const std::size_t m = cand.size();
  auto bit = [&](std::size_t i) { return ((pattern >> (m - 1 - i)) & 1U) != 0; };
  auto flip_for = [](bool b) {
    return b ? SingleQubitUnitary::pauli_z() : SingleQubitUnitary::zero_phase();
  };
  const Party voter_party = Party::voter_at(voter);

  if (options_.execution == VoteExecution::kDecomposed) {
    // Controls: the control qubit and the center-held candidate qubit;
    // target: the voter's own candidate qubit.
    const std::size_t held = cand[1];
    const std::size_t own = cand[0];
    if (!bit(1)) apply_single(Party::center(), SingleQubitUnitary::pauli_x(), held, "X");
    const GateSequence seq = expand_ccu(flip_for(bit(0)), control, held, own);
    for (const GateOp& op : seq.ops()) {
      const bool voter_side = op.controls.empty() && op.target == own;
      const Party actor = voter_side ? voter_party : Party::center();
      if (op.controls.empty()) {
        apply_single(actor, op.gate, op.target, op.label);
      } else {
        apply_controlled(actor, op.controls, op.target, op.gate, op.label);
      }
    }
    if (!bit(1)) apply_single(Party::center(), SingleQubitUnitary::pauli_x(), held, "X");
    return;
  }

  // The voter's own bit suffices when no other support state shares it.
  const std::size_t sharing = static_cast<std::size_t>(
      std::count_if(support_.begin(), support_.end(), [&](std::uint64_t b) {
        return ((b >> (m - 1)) & 1U) == ((pattern >> (m - 1)) & 1U);
      }));
  if (sharing == 1) {
    apply_controlled(voter_party, {{control, true}}, cand[0], flip_for(bit(0)),
                     bit(0) ? "CZ" : "CZ0");
    return;
  }
  std::vector<Control> controls{{control, true}};
  for (std::size_t i = 0; i + 1 < m; ++i) controls.push_back({cand[i], bit(i)});
  apply_controlled(voter_party, controls, cand[m - 1], flip_for(bit(m - 1)),
                   "MCZ" + bits_of(pattern, m) + " assist=center");
}

void DistributedElection::run_round(std::size_t voter, Choice choice, std::size_t round) {
  const std::size_t control = prepare(plus_state(), {Lineage::kControl}, voter, "plus");
  transfer(control, voter, Direction::kToVoter, Stage::kVoting, round);
  if (choice) apply_vote(voter, control, basis_[*choice]);
  transfer(control, voter, Direction::kToCenter, Stage::kVoting, round);
  voters_[voter].control = control;
  ++rounds_run_;
}

std::vector<ProtocolEvent> DistributedElection::voting_round(std::size_t voter,
                                                             Choice choice) {
  check_voter(voter);
  const std::size_t start = trace_.size();
  VoterState& v = voters_[voter];
  if (v.flag_mirror) {
    log(Party::center(), Action::kReject,
        "voter=" + std::to_string(voter) + " reason=flag-set");
    fail(ErrorCode::kDoubleVote, "voter " + std::to_string(voter) + " already voted");
  }
  if (choice && *choice >= config_.num_candidates) {
    fail(ErrorCode::kConfig, "choice " + std::to_string(*choice) + " out of range");
  }
  v.choice = choice;
  run_round(voter, choice, 0);
  apply_single(Party::center(), SingleQubitUnitary::pauli_x(), v.flag, "X");
  const MeasurementRecord r = measure(Party::center(), v.flag);
  v.flag_mirror = r.outcome == 1;
  return {trace_.begin() + static_cast<std::ptrdiff_t>(start), trace_.end()};
}

void DistributedElection::vote_all() {
  for (std::size_t j = 0; j < voters_.size(); ++j) voting_round(j, config_.choices[j]);
}

VerificationResult DistributedElection::verify_entanglement(std::size_t voter,
                                                            std::size_t rounds,
                                                            double threshold) {
  check_voter(voter);
  if (rounds < kMinVerificationRounds) {
    fail(ErrorCode::kStatistics, "verification needs at least " +
                                     std::to_string(kMinVerificationRounds) + " rounds");
  }
  VerificationResult result;
  result.voter = voter;
  result.rounds = rounds;
  result.threshold = threshold;
  long xx_sum = 0, zz_sum = 0;
  std::size_t xx_n = 0, zz_n = 0;
  VoterState& v = voters_[voter];
  const SingleQubitUnitary h = SingleQubitUnitary::hadamard();
  for (std::size_t r = 0; r < rounds; ++r) {
    std::size_t first;
    if (!v.spare_pairs.empty()) {
      first = v.spare_pairs.front();
      v.spare_pairs.erase(v.spare_pairs.begin());
      ++result.setup_pairs_used;
    } else {
      first = prepare(bell_pair(), {Lineage::kVerificationPair, Lineage::kVerificationPair},
                      voter, "bell");
      transfer(first, voter, Direction::kToVoter, Stage::kVerification, r);
    }
    const bool x_round = r % 2 == 1;
    if (x_round) {
      apply_single(Party::voter_at(voter), h, first, "H");
      apply_single(Party::center(), h, first + 1, "H");
    }
    const int a = measure(Party::voter_at(voter), first).outcome;
    const int b = measure(Party::center(), first + 1).outcome;
    const int product = a == b ? 1 : -1;
    if (x_round) {
      xx_sum += product;
      ++xx_n;
    } else {
      zz_sum += product;
      ++zz_n;
    }
  }
  result.xx = static_cast<double>(xx_sum) / static_cast<double>(xx_n);
  result.zz = static_cast<double>(zz_sum) / static_cast<double>(zz_n);
  result.intact = std::min(result.xx, result.zz) >= threshold;
  log(Party::center(), Action::kVerify,
      "voter=" + std::to_string(voter) + " rounds=" + std::to_string(rounds) +
          " xx=" + number(result.xx) + " zz=" + number(result.zz) +
          " threshold=" + number(threshold) +
          " verdict=" + (result.intact ? "intact" : "disturbed"));
  return result;
}

DistributedTally DistributedElection::tally(TallyMode mode) {
  for (std::size_t j = 0; j < voters_.size(); ++j) {
    if (!voters_[j].control) {
      fail(ErrorCode::kProtocolIncomplete,
           "control qubit of voter " + std::to_string(j) + " was never returned");
    }
  }
  if (tallied_) fail(ErrorCode::kProtocolIncomplete, "election already tallied");
  tallied_ = true;

  const std::size_t k = config_.num_candidates;
  const std::size_t m = candidate_width_;
  const double k_eff = static_cast<double>(support_.size());
  const SingleQubitUnitary h = SingleQubitUnitary::hadamard();
  DistributedTally out;
  std::vector<Choice> ballots(voters_.size());
  double accepted_weight = 0.0;
  std::size_t measured = 0;
  std::size_t accepted = 0;

  auto read_pattern = [&](std::uint64_t pattern) -> Choice {
    const auto it = std::find(basis_.begin(), basis_.end(), pattern);
    if (it == basis_.end()) {
      ++out.unresolved;
      return std::nullopt;
    }
    return static_cast<std::size_t>(it - basis_.begin());
  };

  for (std::size_t j = 0; j < voters_.size(); ++j) {
    VoterState& v = voters_[j];
    if (mode == TallyMode::kExact) {
      apply_single(Party::center(), h, *v.control, "H");
      const double p1 = register_.probability(*v.control, 1);
      log(Party::center(), Action::kMeasure,
          "qubit=" + std::to_string(*v.control) + " mode=exact p1=" + number(p1));
      accepted_weight += p1;
      if (p1 < kZeroProbability) continue;
      if (std::abs(p1 - 1.0 / k_eff) > 1e-9) ++out.inconsistent_controls;
      std::vector<std::size_t> qubits{*v.control};
      qubits.insert(qubits.end(), v.candidate.begin(), v.candidate.end());
      const std::vector<double> dist = register_.marginal(qubits);
      const std::uint64_t offset = std::uint64_t{1} << m;
      std::uint64_t best = 0;
      for (std::uint64_t b = 1; b < offset; ++b) {
        if (dist[offset | b] > dist[offset | best]) best = b;
      }
      ballots[j] = read_pattern(best);
      continue;
    }
    for (std::size_t attempt = 0; attempt < kRetryBudget; ++attempt) {
      if (attempt > 0) {
        issue_candidate(j, attempt);
        run_round(j, v.choice, attempt);
      }
      apply_single(Party::center(), h, *v.control, "H");
      const int outcome = measure(Party::center(), *v.control).outcome;
      ++measured;
      if (attempt == 0) accepted_weight += outcome;
      if (outcome == 0) continue;
      ++accepted;
      std::uint64_t pattern = 0;
      for (std::size_t i = 0; i < m; ++i) {
        const Party actor = i == 0 ? Party::voter_at(j) : Party::center();
        pattern = (pattern << 1) |
                  static_cast<std::uint64_t>(measure(actor, v.candidate[i]).outcome);
      }
      ballots[j] = read_pattern(pattern);
      break;
    }
  }

  TallyResult& agg = out.aggregate;
  agg.mode = mode;
  agg.post_selection_probability = accepted_weight / static_cast<double>(voters_.size());
  agg.eta = std::sqrt(agg.post_selection_probability);
  agg.counts.assign(k, 0);
  for (const Choice& b : ballots) {
    if (b) {
      ++agg.counts[*b];
    } else {
      ++out.empty_ballots;
    }
  }
  agg.participating_votes = voters_.size() - out.empty_ballots;
  agg.probabilities.assign(k, 0.0);
  for (std::size_t c = 0; c < k && agg.participating_votes; ++c) {
    agg.probabilities[c] = static_cast<double>(agg.counts[c]) /
                           static_cast<double>(agg.participating_votes);
  }
  if (mode == TallyMode::kSampled) {
    ShotStatistics stats;
    stats.shots = measured;
    stats.accepted = accepted;
    stats.frequencies = agg.probabilities;
    for (double p : agg.probabilities) {
      stats.standard_errors.push_back(
          agg.participating_votes
              ? std::sqrt(p * (1 - p) / static_cast<double>(agg.participating_votes))
              : 0.0);
    }
    stats.stray = out.unresolved;
    agg.statistics = stats;
  }
  out.rounds_run = rounds_run_;
  if (options_.reveal_ballots) out.revealed_ballots = ballots;

  // Anonymous IDs: a fresh random permutation, dropped on return.
  std::vector<std::size_t> ids(ballots.size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = i;
  for (std::size_t i = ids.size(); i > 1; --i) {
    std::swap(ids[i - 1], ids[rng_.below(i)]);
  }
  out.anonymous_ballots.resize(ballots.size());
  for (std::size_t i = 0; i < ids.size(); ++i) out.anonymous_ballots[ids[i]] = ballots[i];
  return out;
}

}  // namespace qvote::distributed
