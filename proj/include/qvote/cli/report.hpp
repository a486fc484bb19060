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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qvote/cli/config_file.hpp"
#include "qvote/compiler/gate_sequence.hpp"
#include "qvote/distributed/protocol.hpp"
#include "qvote/election/tally.hpp"

namespace qvote::cli {

inline constexpr std::string_view kOutputSchema = "qvote-result/1";

enum class OutputFormat { kHuman, kStructured };

struct GateCountReport {
  /// The voting circuit as emitted, one multi-controlled op per voter.
  GateCounts logical;
  /// After lowering to gates with at most two controls.
  GateCounts compiled;
  std::size_t ancillas = 0;
};

struct DistributedReport {
  std::size_t empty_ballots = 0;
  std::size_t unresolved = 0;
  std::size_t inconsistent_controls = 0;
  std::size_t rounds_run = 0;
  std::size_t gates_applied = 0;
  std::vector<distributed::VerificationResult> verification;
  /// Only with --unsafe-reveal-ballots.
  std::optional<std::vector<Choice>> ballots;
};

/// Everything a run produces. Serialized as JSON with fields in a fixed
/// order; see docs in README.md for the schema.
struct StructuredOutput {
  std::string schema{kOutputSchema};
  std::string mode;    // "centralized" | "distributed"
  std::string status;  // "ok" | "no-votes" | "tamper-detected"
  ConfigFile config;
  /// Choices are echoed in centralized mode only.
  bool echo_choices = true;
  std::optional<TallyResult> tally;
  std::optional<GateCountReport> gate_counts;
  std::optional<DistributedReport> distributed;
};

/// Byte-stable JSON (two-space indent, trailing newline).
std::string to_json_text(const StructuredOutput& output);
/// Inverse of to_json_text. Throws kParse on malformed input or an unknown
/// schema version.
StructuredOutput parse_structured(std::string_view text);

std::string emit_report(const StructuredOutput& output, OutputFormat format);

}  // namespace qvote::cli
