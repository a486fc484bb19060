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

#include "qvote/cli/runner.hpp"

#include <fstream>
#include <ostream>

#include "qvote/compiler/decompose.hpp"
#include "qvote/distributed/simulation.hpp"
#include "qvote/election/centralized.hpp"
#include "qvote/election/tally.hpp"

namespace qvote::cli {
namespace {

void run_centralized(const RunRequest& request, const ConfigFile& config, RunResult& result) {
  const ElectionConfig& cfg = config.election;
  StructuredOutput& out = *result.output;
  const ElectionRun run = run_election(cfg);
  const RegisterLayout layout = layout_for(cfg);
  const GateSequence compiled = compile_voting_circuit(run, layout);
  out.gate_counts = GateCountReport{run.circuit.counts(), compiled.counts(),
                                    compiled.num_qubits() - layout.total()};
  if (request.dump_circuit_path) result.circuit_dump = dump_circuit(compiled);
  if (participating_votes(cfg) == 0) {
    out.status = "no-votes";
    result.exit_code = kExitNoVotes;
    return;
  }
  out.tally = cfg.shots == 0 ? tally_exact(run.state, cfg)
                             : tally_sampled(run.state, cfg, cfg.shots, cfg.seed);
}

void run_distributed(const RunRequest& request, const ConfigFile& config, RunResult& result) {
  StructuredOutput& out = *result.output;
  out.echo_choices = false;
  std::vector<distributed::AdversaryAction> adversary;
  if (request.adversary_text) adversary = parse_adversary_spec(*request.adversary_text);
  distributed::DistributedElection election(
      config.election,
      {.pairs_per_voter = config.pairs_per_voter,
       .execution = distributed::VoteExecution::kDirect,
       .reveal_ballots = request.unsafe_reveal_ballots},
      adversary);
  DistributedReport report;
  auto finish = [&] {
    report.gates_applied = election.gates_applied();
    out.distributed = report;
    if (request.trace_path) result.trace = distributed::format_trace(election.trace());
  };
  try {
    election.vote_all();
    const std::size_t rounds =
        request.verify_rounds.value_or(distributed::kDefaultVerificationRounds);
    const double threshold = request.threshold.value_or(distributed::kDefaultThreshold);
    bool tampered = false;
    if (rounds > 0) {
      for (std::size_t j = 0; j < config.election.num_voters; ++j) {
        report.verification.push_back(election.verify_entanglement(j, rounds, threshold));
        tampered = tampered || !report.verification.back().intact;
      }
    }
    const distributed::DistributedTally t =
        election.tally(config.election.shots == 0 ? TallyMode::kExact : TallyMode::kSampled);
    out.tally = t.aggregate;
    report.empty_ballots = t.empty_ballots;
    report.unresolved = t.unresolved;
    report.inconsistent_controls = t.inconsistent_controls;
    report.rounds_run = t.rounds_run;
    report.ballots = t.revealed_ballots;
    if (tampered || t.inconsistent_controls > 0) {
      out.status = "tamper-detected";
      result.exit_code = kExitTamperDetected;
    } else if (t.aggregate.participating_votes == 0) {
      out.status = "no-votes";
      result.exit_code = kExitNoVotes;
    }
  } catch (...) {
    finish();
    throw;
  }
  finish();
}

}  // namespace

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse:
      return kExitParse;
    case ErrorCode::kCapacity:
      return kExitCapacity;
    case ErrorCode::kNoVotes:
      return kExitNoVotes;
    case ErrorCode::kProtocolIncomplete:
    case ErrorCode::kChannelLoss:
      return kExitProtocolIncomplete;
    case ErrorCode::kInsufficientSamples:
      return kExitInsufficientSamples;
    case ErrorCode::kConfig:
    case ErrorCode::kIndex:
    case ErrorCode::kStatistics:
    case ErrorCode::kDoubleVote:
      return kExitValidation;
    case ErrorCode::kNormalization:
    case ErrorCode::kShape:
    case ErrorCode::kUnitarity:
    case ErrorCode::kImpossibleOutcome:
    case ErrorCode::kRewrite:
      return kExitInternal;
  }
  return kExitInternal;
}

void check_mode_flags(const RunRequest& r) {
  if (r.mode == RunMode::kCentralized) {
    if (r.trace_path) fail(ErrorCode::kConfig, "--trace needs --mode distributed");
    if (r.adversary_text) fail(ErrorCode::kConfig, "--adversary needs --mode distributed");
    if (r.verify_rounds) fail(ErrorCode::kConfig, "--verify-rounds needs --mode distributed");
    if (r.threshold) fail(ErrorCode::kConfig, "--threshold needs --mode distributed");
    if (r.unsafe_reveal_ballots) {
      fail(ErrorCode::kConfig, "--unsafe-reveal-ballots needs --mode distributed");
    }
  } else if (r.dump_circuit_path) {
    fail(ErrorCode::kConfig, "--dump-circuit needs --mode centralized");
  }
}

RunResult execute(const RunRequest& request) {
  RunResult result;
  try {
    check_mode_flags(request);
  } catch (const Error& e) {
    result.exit_code = kExitUsage;
    result.error = e.what();
    return result;
  }
  try {
    ConfigFile config = parse_config(request.config_text);
    if (request.shots) config.election.shots = *request.shots;
    if (request.seed) config.election.seed = *request.seed;
    result.output = StructuredOutput{};
    StructuredOutput& out = *result.output;
    out.mode = request.mode == RunMode::kCentralized ? "centralized" : "distributed";
    out.status = "ok";
    out.config = config;
    if (request.mode == RunMode::kCentralized) {
      run_centralized(request, config, result);
    } else {
      run_distributed(request, config, result);
    }
  } catch (const Error& e) {
    result.exit_code = exit_code_for(e.code());
    result.error = e.what();
    result.output.reset();
  } catch (const std::exception& e) {
    result.exit_code = kExitInternal;
    result.error = e.what();
    result.output.reset();
  }
  return result;
}

int run(const RunRequest& request, std::ostream& out, std::ostream& err) {
  const RunResult result = execute(request);
  if (result.output) out << emit_report(*result.output, request.format);
  if (!result.error.empty()) err << "qvote: " << result.error << "\n";
  auto write = [&](const std::optional<std::string>& path, const std::string& text) {
    if (!path) return true;
    std::ofstream file(*path, std::ios::binary);
    file << text;
    if (!file) {
      err << "qvote: cannot write " << *path << "\n";
      return false;
    }
    return true;
  };
  const bool ok = write(request.dump_circuit_path, result.circuit_dump) &
                  write(request.trace_path, result.trace);
  if (!ok && result.exit_code == kExitOk) return kExitInternal;
  return result.exit_code;
}

}  // namespace qvote::cli
