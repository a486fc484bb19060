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

// qvote: run a centralized or distributed election from a config file.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "qvote/cli/runner.hpp"

namespace {

bool slurp(const std::string& path, std::string& text) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  text = buffer.str();
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  using qvote::cli::OutputFormat;
  using qvote::cli::RunMode;

  CLI::App app{"Quantum voting simulator"};
  qvote::cli::RunRequest request;
  std::string config_path;
  std::optional<std::string> adversary_path;

  const std::map<std::string, RunMode> modes{{"centralized", RunMode::kCentralized},
                                             {"distributed", RunMode::kDistributed}};
  const std::map<std::string, OutputFormat> formats{{"human", OutputFormat::kHuman},
                                                    {"structured", OutputFormat::kStructured}};
  app.add_option("--mode", request.mode, "centralized | distributed")
      ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
  app.add_option("--config", config_path, "Election config file")->required();
  app.add_option("--format", request.format, "human | structured")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  app.add_option("--shots", request.shots, "Sampled tally with this many shots (0 = exact)");
  app.add_option("--seed", request.seed, "Seed for every random draw");
  app.add_option("--dump-circuit", request.dump_circuit_path,
                 "Write the compiled voting circuit to this file (centralized)");
  app.add_option("--trace", request.trace_path,
                 "Write the protocol event trace to this file (distributed)");
  app.add_option("--adversary", adversary_path, "Adversary spec file (distributed)");
  app.add_option("--verify-rounds", request.verify_rounds,
                 "Verification rounds per voter, 0 to skip (distributed; default 200)");
  app.add_option("--threshold", request.threshold,
                 "Verification correlation threshold (distributed; default 0.5)");
  app.add_flag("--unsafe-reveal-ballots", request.unsafe_reveal_ballots,
               "Print per-voter ballots (distributed; testing only)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int status = app.exit(e);
    return status == 0 ? 0 : qvote::cli::kExitUsage;
  }

  if (!slurp(config_path, request.config_text)) {
    std::cerr << "qvote: cannot read config " << config_path << "\n";
    return qvote::cli::kExitParse;
  }
  if (adversary_path) {
    std::string text;
    if (!slurp(*adversary_path, text)) {
      std::cerr << "qvote: cannot read adversary spec " << *adversary_path << "\n";
      return qvote::cli::kExitParse;
    }
    request.adversary_text = std::move(text);
  }
  return qvote::cli::run(request, std::cout, std::cerr);
}
