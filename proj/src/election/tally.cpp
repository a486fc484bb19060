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

#include "qvote/election/tally.hpp"

#include <cmath>

#include "qvote/errors.hpp"

namespace qvote {

namespace {

constexpr double kTieWindow = 1e-9;

StateVector with_tally_hadamard(const StateVector& state,
                                const RegisterLayout& layout) {
  if (state.num_qubits() != layout.total()) {
    fail(ErrorCode::kShape, "state width does not match the election layout");
  }
  StateVector out = state;
  out.apply_single(SingleQubitUnitary::hadamard(), layout.control());
  return out;
}

void fill_counts(TallyResult& result, const std::vector<double>& shares) {
  result.counts.assign(shares.size(), 0);
  for (std::size_t k = 0; k < shares.size(); ++k) {
    bool tie = false;
    result.counts[k] = round_half_even(
        shares[k] * static_cast<double>(result.participating_votes), &tie);
    result.rounding_tie = result.rounding_tie || tie;
  }
}

}  // namespace

std::size_t round_half_even(double value, bool* tie) {
  const double floor = std::floor(value);
  const double frac = value - floor;
  const bool at_half = std::abs(frac - 0.5) < kTieWindow;
  if (tie) *tie = at_half;
  if (at_half) {
    const auto lower = static_cast<std::size_t>(floor);
    return lower % 2 == 0 ? lower : lower + 1;
  }
  return static_cast<std::size_t>(std::llround(value));
}

TallyResult tally_exact(const StateVector& state, const ElectionConfig& config) {
  validate(config);
  const RegisterLayout layout = layout_for(config);
  const auto basis = resolved_basis_map(config);
  TallyResult result;
  result.mode = TallyMode::kExact;
  result.participating_votes = participating_votes(config);

  StateVector work = with_tally_hadamard(state, layout);
  try {
    result.post_selection_probability = work.postselect(layout.control(), 1);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kImpossibleOutcome) throw;
    fail(ErrorCode::kNoVotes, "the difference sector is empty");
  }
  result.eta = std::sqrt(result.post_selection_probability);

  const auto dist = work.marginal(layout.candidate_register());
  result.probabilities.resize(config.num_candidates);
  for (std::size_t k = 0; k < config.num_candidates; ++k) {
    result.probabilities[k] = dist[basis[k]];
  }
  fill_counts(result, result.probabilities);
  return result;
}

TallyResult tally_sampled(const StateVector& state, const ElectionConfig& config,
                          std::size_t shots, std::uint64_t seed) {
  validate(config);
  if (shots < 1) fail(ErrorCode::kStatistics, "sampled tally needs shots >= 1");
  const RegisterLayout layout = layout_for(config);
  const auto basis = resolved_basis_map(config);

  // Every shot measures a fresh copy of the same pre-measurement state, so
  // the Born probabilities are computed once and each shot draws from them.
  const StateVector base = with_tally_hadamard(state, layout);
  const double p_accept = base.probability(layout.control(), 1);
  std::vector<double> conditional;
  if (p_accept >= kZeroProbability) {
    StateVector accepted = base;
    accepted.postselect(layout.control(), 1);
    conditional = accepted.marginal(layout.candidate_register());
  }

  std::vector<std::size_t> outcome_hits(conditional.size(), 0);
  std::size_t accepted_shots = 0;
  for (std::size_t shot = 0; shot < shots; ++shot) {
    if (!(counter_uniform(seed, shot, 0) < p_accept)) continue;
    ++accepted_shots;
    const double u = counter_uniform(seed, shot, 1);
    double cumulative = 0.0;
    std::size_t pick = conditional.size() - 1;
    for (std::size_t b = 0; b < conditional.size(); ++b) {
      cumulative += conditional[b];
      if (u < cumulative) {
        pick = b;
        break;
      }
    }
    ++outcome_hits[pick];
  }
  if (accepted_shots == 0) {
    fail(ErrorCode::kInsufficientSamples,
         "no shot out of " + std::to_string(shots) +
             " landed in the difference sector");
  }

  TallyResult result;
  result.mode = TallyMode::kSampled;
  result.participating_votes = participating_votes(config);
  result.post_selection_probability =
      static_cast<double>(accepted_shots) / static_cast<double>(shots);
  result.eta = std::sqrt(result.post_selection_probability);

  ShotStatistics stats;
  stats.shots = shots;
  stats.accepted = accepted_shots;
  std::size_t matched = 0;
  const double n = static_cast<double>(accepted_shots);
  for (std::size_t k = 0; k < config.num_candidates; ++k) {
    const std::size_t hits = outcome_hits[basis[k]];
    matched += hits;
    const double p = static_cast<double>(hits) / n;
    stats.frequencies.push_back(p);
    stats.standard_errors.push_back(std::sqrt(p * (1.0 - p) / n));
  }
  stats.stray = accepted_shots - matched;
  result.probabilities = stats.frequencies;
  fill_counts(result, result.probabilities);
  result.statistics = std::move(stats);
  return result;
}

}  // namespace qvote
