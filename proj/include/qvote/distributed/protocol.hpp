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

namespace qvote::distributed {

/// Who holds a qubit (or performs an action).
struct Party {
  enum class Kind { kCenter, kVoter, kChannel, kAdversary, kLost };
  Kind kind = Kind::kCenter;
  /// Voter index for kVoter and kChannel.
  std::size_t voter = 0;

  static Party center() { return {Kind::kCenter, 0}; }
  static Party voter_at(std::size_t j) { return {Kind::kVoter, j}; }
  static Party channel(std::size_t j) { return {Kind::kChannel, j}; }
  static Party adversary() { return {Kind::kAdversary, 0}; }
  static Party lost() { return {Kind::kLost, 0}; }

  friend bool operator==(const Party&, const Party&) = default;
};

/// "center", "voter[2]", "channel[2]", "adversary", "lost".
std::string to_string(const Party& party);
std::optional<Party> parse_party(std::string_view text);

enum class Lineage {
  kCandidateVoterSide,
  kCandidateCenterSide,
  kControl,
  kVerificationPair,
  kFlag,
  kFresh,  // adversary-supplied replacement
};

std::string_view to_string(Lineage lineage);

struct QubitHandle {
  std::size_t qubit = 0;
  Party owner;
  Lineage lineage = Lineage::kControl;
  /// Voter the qubit was issued for.
  std::size_t voter = 0;
};

enum class Action {
  kPrepare,
  kSend,
  kReceive,
  kApplyGate,
  kMeasure,
  kVerify,
  kAdversary,
  kReject,
  kLoss,
};

std::string_view to_string(Action action);
std::optional<Action> parse_action(std::string_view text);

/// One trace record. The payload is a space-separated list of key=value
/// fields and always begins with t=<logical time>.
struct ProtocolEvent {
  std::uint64_t seq = 0;
  Party actor;
  Action action = Action::kPrepare;
  std::uint64_t time = 0;
  std::string detail;

  /// "t=<time>" followed by the detail fields.
  std::string payload() const;
  /// Value of field `key` in the detail, if present.
  std::optional<std::string> field(std::string_view key) const;
};

/// Line format: "<seq> <actor> <action> t=<time> [key=value ...]".
std::string format_event(const ProtocolEvent& event);
/// Inverse of format_event. Throws kParse on malformed lines.
ProtocolEvent parse_event(std::string_view line);
std::string format_trace(const std::vector<ProtocolEvent>& events);
std::vector<ProtocolEvent> parse_trace(std::string_view text);

enum class Direction { kToVoter, kToCenter };
enum class Stage { kSetup, kVoting, kVerification };
enum class TargetFilter { kAny, kCandidate, kVerification, kControl };

std::string_view to_string(Direction d);
std::string_view to_string(Stage s);
std::string_view to_string(TargetFilter f);
std::optional<Direction> parse_direction(std::string_view text);
std::optional<Stage> parse_stage(std::string_view text);
std::optional<TargetFilter> parse_target_filter(std::string_view text);

/// When an adversary action fires: a transfer on voter `voter`'s channel in
/// the given direction during `stage`. `round` narrows it to one round
/// (the attempt number in setup and voting, the verification round index in
/// verification); nullopt matches every round.
struct Trigger {
  std::size_t voter = 0;
  Direction direction = Direction::kToVoter;
  Stage stage = Stage::kSetup;
  std::optional<std::size_t> round;
  TargetFilter target = TargetFilter::kAny;
};

struct AdversaryAction {
  enum class Kind {
    kMeasure,        // measure-in-channel
    kPhaseTamper,    // diag(1, e^{i angle})
    kBitFlip,        // X
    kSwapWithFresh,  // replace with a fresh |0>, keep the original
    kLoss,           // fault: handle never arrives
    kDelay,          // fault: delivery postponed by `delay` ticks
  };
  enum class Basis { kZ, kX };

  Trigger trigger;
  Kind kind = Kind::kMeasure;
  Basis basis = Basis::kZ;
  double angle = 0.0;
  std::uint64_t delay = 0;
};

std::string_view to_string(AdversaryAction::Kind kind);
std::optional<AdversaryAction::Kind> parse_adversary_kind(std::string_view text);

struct VerificationResult {
  std::size_t voter = 0;
  std::size_t rounds = 0;
  /// Rounds that used a pair left over from setup.
  std::size_t setup_pairs_used = 0;
  double xx = 0.0;
  double zz = 0.0;
  double threshold = 0.0;
  bool intact = true;
};

/// One ownership change, as seen in the trace.
struct CustodyRecord {
  std::uint64_t seq = 0;
  std::size_t qubit = 0;
  Party owner;

  friend bool operator==(const CustodyRecord&, const CustodyRecord&) = default;
};

/// Rebuilds the ownership timeline from a trace alone: prepare hands a qubit
/// to the actor, send to the channel, receive to the receiver, and loss to
/// nobody.
std::vector<CustodyRecord> replay_custody(const std::vector<ProtocolEvent>& events);

}  // namespace qvote::distributed
