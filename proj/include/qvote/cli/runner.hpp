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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "qvote/cli/report.hpp"
#include "qvote/errors.hpp"

namespace qvote::cli {

/// Process exit statuses.
enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitParse = 2,
  kExitValidation = 3,
  kExitCapacity = 4,
  kExitNoVotes = 5,
  kExitProtocolIncomplete = 6,
  kExitTamperDetected = 7,
  kExitInsufficientSamples = 8,
  kExitUsage = 64,
};

int exit_code_for(ErrorCode code);

enum class RunMode { kCentralized, kDistributed };

struct RunRequest {
  RunMode mode = RunMode::kCentralized;
  /// Config file contents (the CLI reads --config into this).
  std::string config_text;
  OutputFormat format = OutputFormat::kHuman;
  std::optional<std::size_t> shots;
  std::optional<std::uint64_t> seed;
  /// Centralized only: write the compiled circuit dump here.
  std::optional<std::string> dump_circuit_path;
  /// Distributed only.
  std::optional<std::string> trace_path;
  std::optional<std::string> adversary_text;
  std::optional<std::size_t> verify_rounds;
  std::optional<double> threshold;
  bool unsafe_reveal_ballots = false;
};

/// Throws kConfig naming the first flag that does not belong to the mode.
void check_mode_flags(const RunRequest& request);

struct RunResult {
  int exit_code = kExitOk;
  /// Present whenever the pipeline got far enough to report.
  std::optional<StructuredOutput> output;
  std::string error;
  /// Side outputs, returned rather than written so runs stay pure.
  std::string circuit_dump;
  std::string trace;
};

/// Runs the pipeline. Never throws for library errors; they map to exit
/// codes.
RunResult execute(const RunRequest& request);

/// execute() plus I/O: the report goes to `out`, errors to `err`, and the
/// circuit dump and trace to their files.
int run(const RunRequest& request, std::ostream& out, std::ostream& err);

}  // namespace qvote::cli
