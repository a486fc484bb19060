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

#include "qvote/cli/config_file.hpp"

#include <charconv>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "qvote/errors.hpp"

namespace qvote::cli {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(std::string_view value) {
  std::vector<std::string> out;
  std::string token;
  for (char ch : value) {
    if (ch == ' ' || ch == ',' || ch == '\t') {
      if (!token.empty()) out.push_back(std::move(token));
      token.clear();
    } else {
      token += ch;
    }
  }
  if (!token.empty()) out.push_back(std::move(token));
  return out;
}

[[noreturn]] void parse_error(std::size_t line, std::string_view key, const std::string& what) {
  fail(ErrorCode::kParse, "line " + std::to_string(line) + ": field '" + std::string(key) +
                              "': " + what);
}

std::optional<std::uint64_t> to_u64(std::string_view text) {
  std::uint64_t value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || end != text.data() + text.size()) {
    return std::nullopt;
  }
  return value;
}

std::uint64_t number_field(std::size_t line, std::string_view key, std::string_view value) {
  const auto parsed = to_u64(value);
  if (!parsed) parse_error(line, key, "expected a non-negative integer, got '" +
                                          std::string(value) + "'");
  return *parsed;
}

double real_field(std::size_t line, std::string_view key, const std::string& value) {
  char* end = nullptr;
  const double parsed = std::strtod(value.c_str(), &end);
  if (value.empty() || end != value.c_str() + value.size()) {
    parse_error(line, key, "expected a number, got '" + value + "'");
  }
  return parsed;
}

struct Line {
  std::size_t number;
  std::string key;
  std::string value;
};

std::vector<Line> key_value_lines(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::istringstream in{std::string(text)};
  std::string buffer;
  while (std::getline(in, buffer)) {
    ++number;
    std::string_view raw = buffer;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) {
      raw = raw.substr(0, hash);
    }
    raw = trim(raw);
    if (raw.empty()) continue;
    const std::size_t eq = raw.find('=');
    if (eq == std::string_view::npos) {
      fail(ErrorCode::kParse, "line " + std::to_string(number) + ": expected 'key = value'");
    }
    lines.push_back({number, std::string(trim(raw.substr(0, eq))),
                     std::string(trim(raw.substr(eq + 1)))});
  }
  return lines;
}

std::string pattern_bits(std::uint64_t pattern, std::size_t width) {
  std::string out(width, '0');
  for (std::size_t i = 0; i < width; ++i) {
    if ((pattern >> (width - 1 - i)) & 1U) out[i] = '1';
  }
  return out;
}

}  // namespace

ConfigFile parse_config(std::string_view text) {
  static const std::set<std::string> kKnown{"schema",  "voters", "candidates",
                                            "candidate_state", "choices", "shots",
                                            "seed", "pairs_per_voter", "basis_map"};
  std::map<std::string, Line> fields;
  for (Line& line : key_value_lines(text)) {
    if (!kKnown.count(line.key)) parse_error(line.number, line.key, "unknown key");
    if (fields.count(line.key)) {
      parse_error(line.number, line.key,
                  "duplicate (first set on line " +
                      std::to_string(fields.at(line.key).number) + ")");
    }
    fields.emplace(line.key, std::move(line));
  }
  auto required = [&](const std::string& key) -> const Line& {
    const auto it = fields.find(key);
    if (it == fields.end()) {
      fail(ErrorCode::kParse, "field '" + key + "': missing");
    }
    return it->second;
  };

  ConfigFile out;
  ElectionConfig& cfg = out.election;
  if (const auto it = fields.find("schema"); it != fields.end()) {
    const Line& l = it->second;
    if (number_field(l.number, l.key, l.value) != kConfigSchemaVersion) {
      parse_error(l.number, l.key, "unsupported schema version " + l.value);
    }
  }
  {
    const Line& l = required("voters");
    cfg.num_voters = number_field(l.number, l.key, l.value);
  }
  {
    const Line& l = required("candidates");
    cfg.num_candidates = number_field(l.number, l.key, l.value);
  }
  cfg.kind = default_candidate_state_kind(cfg.num_candidates);
  if (const auto it = fields.find("candidate_state"); it != fields.end()) {
    const auto kind = parse_candidate_state_kind(it->second.value);
    if (!kind) parse_error(it->second.number, it->first, "unknown state '" + it->second.value + "'");
    cfg.kind = *kind;
  }
  {
    const Line& l = required("choices");
    for (const std::string& token : split_list(l.value)) {
      if (token == "-" || token == "abstain") {
        cfg.choices.emplace_back();
      } else {
        cfg.choices.emplace_back(number_field(l.number, l.key, token));
      }
    }
  }
  for (auto [key, slot] : {std::pair{"shots", &cfg.shots}, std::pair{"pairs_per_voter",
                                                                     &out.pairs_per_voter}}) {
    if (const auto it = fields.find(key); it != fields.end()) {
      *slot = number_field(it->second.number, key, it->second.value);
    }
  }
  if (const auto it = fields.find("seed"); it != fields.end()) {
    cfg.seed = number_field(it->second.number, "seed", it->second.value);
  }
  if (const auto it = fields.find("basis_map"); it != fields.end()) {
    const std::size_t width = candidate_qubit_count(cfg.kind, cfg.num_candidates);
    for (const std::string& token : split_list(it->second.value)) {
      if (token.size() != width || token.find_first_not_of("01") != std::string::npos) {
        parse_error(it->second.number, "basis_map",
                    "'" + token + "' is not a " + std::to_string(width) + "-bit string");
      }
      cfg.basis_map.push_back(std::stoull(token, nullptr, 2));
    }
  }
  validate(cfg);
  if (out.pairs_per_voter < 1) fail(ErrorCode::kConfig, "pairs_per_voter must be >= 1");
  return out;
}

std::string format_config(const ConfigFile& config) {
  const ElectionConfig& c = config.election;
  std::ostringstream out;
  out << "schema = " << kConfigSchemaVersion << "\n"
      << "voters = " << c.num_voters << "\n"
      << "candidates = " << c.num_candidates << "\n"
      << "candidate_state = " << to_string(c.kind) << "\n"
      << "choices =";
  for (const Choice& choice : c.choices) {
    out << " ";
    if (choice) {
      out << *choice;
    } else {
      out << "-";
    }
  }
  out << "\nshots = " << c.shots << "\nseed = " << c.seed
      << "\npairs_per_voter = " << config.pairs_per_voter << "\n";
  if (!c.basis_map.empty()) {
    const std::size_t width = candidate_qubit_count(c.kind, c.num_candidates);
    out << "basis_map =";
    for (std::uint64_t b : c.basis_map) out << " " << pattern_bits(b, width);
    out << "\n";
  }
  return out.str();
}

std::vector<distributed::AdversaryAction> parse_adversary_spec(std::string_view text) {
  using distributed::AdversaryAction;
  std::vector<AdversaryAction> actions;
  std::size_t number = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++number;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    const std::vector<std::string> tokens = split_list(raw);
    if (tokens.empty()) continue;
    AdversaryAction a;
    std::set<std::string> seen;
    for (const std::string& token : tokens) {
      const std::size_t eq = token.find('=');
      if (eq == std::string::npos) parse_error(number, token, "expected key=value");
      const std::string key = token.substr(0, eq);
      const std::string value = token.substr(eq + 1);
      if (!seen.insert(key).second) parse_error(number, key, "duplicate");
      if (key == "voter") {
        a.trigger.voter = number_field(number, key, value);
      } else if (key == "direction") {
        const auto d = distributed::parse_direction(value);
        if (!d) parse_error(number, key, "unknown direction '" + value + "'");
        a.trigger.direction = *d;
      } else if (key == "stage") {
        const auto s = distributed::parse_stage(value);
        if (!s) parse_error(number, key, "unknown stage '" + value + "'");
        a.trigger.stage = *s;
      } else if (key == "round") {
        if (value != "*") a.trigger.round = number_field(number, key, value);
      } else if (key == "target") {
        const auto t = distributed::parse_target_filter(value);
        if (!t) parse_error(number, key, "unknown target '" + value + "'");
        a.trigger.target = *t;
      } else if (key == "kind") {
        const auto k = distributed::parse_adversary_kind(value);
        if (!k) parse_error(number, key, "unknown kind '" + value + "'");
        a.kind = *k;
      } else if (key == "basis") {
        if (value != "z" && value != "x") parse_error(number, key, "expected z or x");
        a.basis = value == "x" ? AdversaryAction::Basis::kX : AdversaryAction::Basis::kZ;
      } else if (key == "angle") {
        a.angle = real_field(number, key, value);
      } else if (key == "delay") {
        a.delay = number_field(number, key, value);
      } else {
        parse_error(number, key, "unknown key");
      }
    }
    if (!seen.count("voter") || !seen.count("kind")) {
      fail(ErrorCode::kParse, "line " + std::to_string(number) +
                                  ": 'voter' and 'kind' are required");
    }
    actions.push_back(a);
  }
  return actions;
}

}  // namespace qvote::cli
