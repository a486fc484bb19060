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

#include "qvote/distributed/protocol.hpp"

#include <array>
#include <charconv>
#include <sstream>
#include <utility>

#include "qvote/errors.hpp"

namespace qvote::distributed {
namespace {

template <typename E, std::size_t N>
std::optional<E> lookup(const std::array<std::pair<E, std::string_view>, N>& table,
                        std::string_view text) {
  for (const auto& [value, name] : table) {
    if (name == text) return value;
  }
  return std::nullopt;
}

template <typename E, std::size_t N>
std::string_view name_of(const std::array<std::pair<E, std::string_view>, N>& table,
                         E value) {
  for (const auto& [v, name] : table) {
    if (v == value) return name;
  }
  return "?";
}

constexpr std::array<std::pair<Action, std::string_view>, 9> kActions{{
    {Action::kPrepare, "prepare"},
    {Action::kSend, "send"},
    {Action::kReceive, "receive"},
    {Action::kApplyGate, "apply-gate"},
    {Action::kMeasure, "measure"},
    {Action::kVerify, "verify"},
    {Action::kAdversary, "adversary"},
    {Action::kReject, "reject"},
    {Action::kLoss, "loss"},
}};

constexpr std::array<std::pair<Lineage, std::string_view>, 6> kLineages{{
    {Lineage::kCandidateVoterSide, "candidate-voter-side"},
    {Lineage::kCandidateCenterSide, "candidate-center-side"},
    {Lineage::kControl, "control"},
    {Lineage::kVerificationPair, "verification-pair"},
    {Lineage::kFlag, "flag"},
    {Lineage::kFresh, "fresh"},
}};

constexpr std::array<std::pair<Direction, std::string_view>, 2> kDirections{{
    {Direction::kToVoter, "to-voter"},
    {Direction::kToCenter, "to-center"},
}};

constexpr std::array<std::pair<Stage, std::string_view>, 3> kStages{{
    {Stage::kSetup, "setup"},
    {Stage::kVoting, "voting"},
    {Stage::kVerification, "verification"},
}};

constexpr std::array<std::pair<TargetFilter, std::string_view>, 4> kTargets{{
    {TargetFilter::kAny, "any"},
    {TargetFilter::kCandidate, "candidate"},
    {TargetFilter::kVerification, "verification"},
    {TargetFilter::kControl, "control"},
}};

constexpr std::array<std::pair<AdversaryAction::Kind, std::string_view>, 6> kKinds{{
    {AdversaryAction::Kind::kMeasure, "measure"},
    {AdversaryAction::Kind::kPhaseTamper, "phase-tamper"},
    {AdversaryAction::Kind::kBitFlip, "bit-flip"},
    {AdversaryAction::Kind::kSwapWithFresh, "swap-with-fresh"},
    {AdversaryAction::Kind::kLoss, "loss"},
    {AdversaryAction::Kind::kDelay, "delay"},
}};

std::optional<std::uint64_t> parse_u64(std::string_view text) {
  std::uint64_t value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size() || text.empty()) {
    return std::nullopt;
  }
  return value;
}

std::vector<std::size_t> parse_qubit_list(std::string_view text) {
  std::vector<std::size_t> out;
  while (!text.empty()) {
    const std::size_t comma = text.find(',');
    const auto value = parse_u64(text.substr(0, comma));
    if (!value) fail(ErrorCode::kParse, "bad qubit list '" + std::string(text) + "'");
    out.push_back(*value);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace

std::string to_string(const Party& party) {
  switch (party.kind) {
    case Party::Kind::kCenter:
      return "center";
    case Party::Kind::kVoter:
      return "voter[" + std::to_string(party.voter) + "]";
    case Party::Kind::kChannel:
      return "channel[" + std::to_string(party.voter) + "]";
    case Party::Kind::kAdversary:
      return "adversary";
    case Party::Kind::kLost:
      return "lost";
  }
  return "?";
}

std::optional<Party> parse_party(std::string_view text) {
  if (text == "center") return Party::center();
  if (text == "adversary") return Party::adversary();
  if (text == "lost") return Party::lost();
  for (auto [prefix, kind] : {std::pair{std::string_view("voter["), Party::Kind::kVoter},
                              std::pair{std::string_view("channel["), Party::Kind::kChannel}}) {
    if (text.starts_with(prefix) && text.ends_with("]")) {
      const auto index = parse_u64(text.substr(prefix.size(), text.size() - prefix.size() - 1));
      if (index) return Party{kind, static_cast<std::size_t>(*index)};
    }
  }
  return std::nullopt;
}

std::string_view to_string(Lineage lineage) { return name_of(kLineages, lineage); }
std::string_view to_string(Action action) { return name_of(kActions, action); }
std::optional<Action> parse_action(std::string_view text) { return lookup(kActions, text); }
std::string_view to_string(Direction d) { return name_of(kDirections, d); }
std::string_view to_string(Stage s) { return name_of(kStages, s); }
std::string_view to_string(TargetFilter f) { return name_of(kTargets, f); }
std::optional<Direction> parse_direction(std::string_view text) {
  return lookup(kDirections, text);
}
std::optional<Stage> parse_stage(std::string_view text) { return lookup(kStages, text); }
std::optional<TargetFilter> parse_target_filter(std::string_view text) {
  return lookup(kTargets, text);
}
std::string_view to_string(AdversaryAction::Kind kind) { return name_of(kKinds, kind); }
std::optional<AdversaryAction::Kind> parse_adversary_kind(std::string_view text) {
  return lookup(kKinds, text);
}

std::string ProtocolEvent::payload() const {
  std::string out = "t=" + std::to_string(time);
  if (!detail.empty()) out += " " + detail;
  return out;
}

std::optional<std::string> ProtocolEvent::field(std::string_view key) const {
  std::istringstream in(detail);
  std::string token;
  while (in >> token) {
    const std::size_t eq = token.find('=');
    if (eq != std::string::npos && std::string_view(token).substr(0, eq) == key) {
      return token.substr(eq + 1);
    }
  }
  return std::nullopt;
}

std::string format_event(const ProtocolEvent& event) {
  return std::to_string(event.seq) + " " + to_string(event.actor) + " " +
         std::string(to_string(event.action)) + " " + event.payload();
}

ProtocolEvent parse_event(std::string_view line) {
  std::istringstream in{std::string(line)};
  std::string seq, actor, action, time;
  if (!(in >> seq >> actor >> action >> time)) {
    fail(ErrorCode::kParse, "truncated trace line '" + std::string(line) + "'");
  }
  ProtocolEvent event;
  const auto seq_value = parse_u64(seq);
  const auto party = parse_party(actor);
  const auto kind = parse_action(action);
  const auto t = time.starts_with("t=") ? parse_u64(std::string_view(time).substr(2))
                                        : std::nullopt;
  if (!seq_value || !party || !kind || !t) {
    fail(ErrorCode::kParse, "malformed trace line '" + std::string(line) + "'");
  }
  event.seq = *seq_value;
  event.actor = *party;
  event.action = *kind;
  event.time = *t;
  std::getline(in >> std::ws, event.detail);
  return event;
}

std::string format_trace(const std::vector<ProtocolEvent>& events) {
  std::string out;
  for (const ProtocolEvent& e : events) out += format_event(e) + "\n";
  return out;
}

std::vector<ProtocolEvent> parse_trace(std::string_view text) {
  std::vector<ProtocolEvent> events;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    const std::string_view line = text.substr(0, nl);
    if (!line.empty()) events.push_back(parse_event(line));
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  return events;
}

std::vector<CustodyRecord> replay_custody(const std::vector<ProtocolEvent>& events) {
  std::vector<CustodyRecord> out;
  for (const ProtocolEvent& e : events) {
    std::optional<Party> owner;
    switch (e.action) {
      case Action::kPrepare:
      case Action::kReceive:
        owner = e.actor;
        break;
      case Action::kSend: {
        const auto voter = e.field("channel");
        if (!voter) fail(ErrorCode::kParse, "send without channel field");
        owner = Party::channel(static_cast<std::size_t>(std::stoull(*voter)));
        break;
      }
      case Action::kLoss:
        owner = Party::lost();
        break;
      default:
        break;
    }
    if (!owner) continue;
    const auto qubits = e.field("qubits");
    if (!qubits) fail(ErrorCode::kParse, "custody event without qubits field");
    for (std::size_t q : parse_qubit_list(*qubits)) out.push_back({e.seq, q, *owner});
  }
  return out;
}

}  // namespace qvote::distributed
