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

#include "qvote/election/config.hpp"
#include "qvote/qstate/state_vector.hpp"

namespace qvote {

enum class TallyMode { kExact, kSampled };

struct ShotStatistics {
  std::size_t shots = 0;
  /// Shots whose control measurement landed in the difference sector.
  std::size_t accepted = 0;
  /// Per-candidate share of accepted shots.
  std::vector<double> frequencies;
  /// sqrt(p (1 - p) / accepted) per candidate.
  std::vector<double> standard_errors;
  /// Accepted shots whose candidate outcome matched no candidate.
  std::size_t stray = 0;
};

struct TallyResult {
  TallyMode mode = TallyMode::kExact;
  /// Probability (or observed rate) of control = 1 after the tally Hadamard.
  double post_selection_probability = 0.0;
  /// Norm of the unnormalized difference sector.
  double eta = 0.0;
  std::size_t participating_votes = 0;
  std::vector<double> probabilities;
  std::vector<std::size_t> counts;
  /// Set when some probability * V sat on a .5 boundary (rounded to even).
  bool rounding_tie = false;
  std::optional<ShotStatistics> statistics;
};

/// Nearest integer, ties to even. Reports ties through `tie`.
std::size_t round_half_even(double value, bool* tie = nullptr);

/// H on the control, postselect control = 1, read the candidate marginal.
/// Throws kNoVotes when nobody voted.
TallyResult tally_exact(const StateVector& state, const ElectionConfig& config);

/// `shots` independent measurement rounds of the same protocol. Shot i uses
/// randomness derived from (seed, i) alone. Throws kInsufficientSamples when
/// no shot is accepted.
TallyResult tally_sampled(const StateVector& state, const ElectionConfig& config,
                          std::size_t shots, std::uint64_t seed);

}  // namespace qvote
