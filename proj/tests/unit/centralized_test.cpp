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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "election_fixtures.hpp"
#include "qvote/compiler/decompose.hpp"
#include "qvote/election/centralized.hpp"
#include "qvote/election/tally.hpp"
#include "test_support.hpp"

namespace qvote {
namespace {

using testing::brute_force_tally;
using testing::example_one;
using testing::example_two;
using testing::expect_state_near;
using testing::for_each_choice_vector;

ElectionConfig config_with(std::size_t n, std::size_t k, std::vector<Choice> choices) {
  return {.num_voters = n,
          .num_candidates = k,
          .kind = default_candidate_state_kind(k),
          .choices = std::move(choices),
          .shots = 0,
          .seed = 0,
          .basis_map = {}};
}

TEST(PrepareIdRegister, FourVoters) {
  expect_state_near(prepare_id_register(4), {0.5, 0.5, 0.5, 0.5}, 1e-15);
}

TEST(PrepareIdRegister, SingleVoter) {
  expect_state_near(prepare_id_register(1), {1, 0}, 0);
}

TEST(PrepareIdRegister, NonPowerOfTwo) {
  const StateVector s = prepare_id_register(3);
  const double a = 1.0 / std::sqrt(3.0);
  expect_state_near(s, {a, a, a, 0}, 1e-15);
  EXPECT_NEAR(s.norm(), 1.0, 1e-12);
}

TEST(PrepareCandidateState, Kinds) {
  const double s = 1.0 / std::sqrt(2.0);
  const double t = 1.0 / std::sqrt(3.0);
  expect_state_near(prepare_candidate_state(CandidateStateKind::kBellPair, 2),
                    {s, 0, 0, s}, 1e-15);
  expect_state_near(prepare_candidate_state(CandidateStateKind::kWState, 3),
                    {t, t, t, 0}, 1e-15);
  expect_state_near(prepare_candidate_state(CandidateStateKind::kUniformBasis, 4),
                    {0.5, 0.5, 0.5, 0.5}, 1e-15);
}

TEST(PrepareCandidateState, InconsistentKind) {
  EXPECT_QVOTE_ERROR(prepare_candidate_state(CandidateStateKind::kBellPair, 3),
                     ErrorCode::kConfig);
  EXPECT_QVOTE_ERROR(prepare_candidate_state(CandidateStateKind::kWState, 2),
                     ErrorCode::kConfig);
}

TEST(PrepareInitial, ExampleOneLayout) {
  const StateVector s = prepare_initial(example_one());
  ASSERT_EQ(s.num_qubits(), 5U);
  std::size_t populated = 0;
  for (std::uint64_t i = 0; i < 32; ++i) {
    const std::uint64_t cand = i & 0b11;
    const bool expected = cand == 0b00 || cand == 0b11;
    EXPECT_NEAR(s.amplitude(i).real(), expected ? 0.25 : 0.0, 1e-15) << i;
    populated += expected;
  }
  EXPECT_EQ(populated, 16U);
}

TEST(PrepareInitial, SingleVoterAndExampleTwo) {
  const StateVector one = prepare_initial(config_with(1, 2, {0}));
  ASSERT_EQ(one.num_qubits(), 4U);
  for (const char* ket : {"0000", "0011", "0100", "0111"}) {
    EXPECT_NEAR(one.amplitude(std::string(ket)).real(), 0.5, 1e-15);
  }
  const StateVector two = prepare_initial(example_two());
  ASSERT_EQ(two.num_qubits(), 6U);
  std::size_t nonzero = 0;
  for (const Complex& a : two.amplitudes()) nonzero += std::abs(a) > 1e-12;
  EXPECT_EQ(nonzero, 48U);  // 8 IDs x 2 control x 3 candidates
}

TEST(PrepareInitial, CapacityError) {
  ElectionConfig big = config_with(std::size_t{1} << 22, 2, {});
  big.choices.assign(big.num_voters, std::nullopt);
  EXPECT_QVOTE_ERROR(prepare_initial(big), ErrorCode::kCapacity);
}

TEST(CastVote, VoterZeroBlueFlipsEleven) {
  CentralizedElection election(example_one());
  election.cast_vote(0, 0);
  const StateVector& s = election.state();
  // ID 00, control 1: candidate part |00> - |11>.
  EXPECT_NEAR(s.amplitude(std::string("00100")).real(), 0.25, 1e-15);
  EXPECT_NEAR(s.amplitude(std::string("00111")).real(), -0.25, 1e-15);
  // Control 0 sector and other voters untouched.
  EXPECT_NEAR(s.amplitude(std::string("00011")).real(), 0.25, 1e-15);
  EXPECT_NEAR(s.amplitude(std::string("01111")).real(), 0.25, 1e-15);
}

TEST(CastVote, AbstainIsExactNoOp) {
  CentralizedElection election(example_one());
  const StateVector before = election.state();
  election.cast_vote(2, std::nullopt);
  EXPECT_EQ(election.state().distance(before), 0.0);
  EXPECT_TRUE(election.has_voted(2));
  EXPECT_TRUE(election.circuit().empty());
}

TEST(CastVote, DoubleVoteRejected) {
  CentralizedElection election(example_one());
  election.cast_vote(1, 1);
  EXPECT_QVOTE_ERROR(election.cast_vote(1, 0), ErrorCode::kDoubleVote);
  EXPECT_QVOTE_ERROR(election.cast_vote(4, 0), ErrorCode::kIndex);
}

// Difference sector after the tally Hadamard, read straight from amplitudes.
Complex difference_amplitude(const StateVector& s, const RegisterLayout& layout,
                             std::uint64_t id, std::uint64_t cand) {
  const std::size_t m = layout.candidate_qubits;
  const std::uint64_t base = id << (m + 1);
  const Complex x0 = s.amplitude(base | cand);
  const Complex x1 = s.amplitude(base | (std::uint64_t{1} << m) | cand);
  return (x0 - x1) / std::sqrt(2.0);
}

TEST(RunElection, ExampleOneDifferencePattern) {
  const ElectionConfig cfg = example_one();
  const ElectionRun run = run_election(cfg);
  const RegisterLayout layout = layout_for(cfg);
  // Blue voters (00, 10) leave only |11>; Red voters (01, 11) only |00>.
  for (std::uint64_t id = 0; id < 4; ++id) {
    const std::uint64_t voted = (id % 2 == 0) ? 0b11 : 0b00;
    for (std::uint64_t cand : {0b00ULL, 0b11ULL}) {
      const double mag = std::abs(difference_amplitude(run.state, layout, id, cand));
      EXPECT_NEAR(mag, cand == voted ? 0.5 / std::sqrt(2.0) : 0.0, 1e-15);
    }
  }
  EXPECT_EQ(run.circuit.size(), 4U);
}

TEST(RunElection, AllAbstainEqualsInitial) {
  const ElectionConfig cfg = config_with(4, 2, {std::nullopt, std::nullopt,
                                                std::nullopt, std::nullopt});
  EXPECT_EQ(run_election(cfg).state.distance(prepare_initial(cfg)), 0.0);
}

TEST(RunElection, ExampleTwoTranscripts) {
  const ElectionConfig cfg = example_two();
  const ElectionRun run = run_election(cfg);
  const RegisterLayout layout = layout_for(cfg);
  const auto basis = resolved_basis_map(cfg);
  for (std::uint64_t id = 0; id < 8; ++id) {
    const std::uint64_t voted = basis[*cfg.choices[id]];
    for (std::uint64_t cand = 0; cand < 4; ++cand) {
      const double mag = std::abs(difference_amplitude(run.state, layout, id, cand));
      // Per-branch weight 1/8 * 1/2 * 1/3, difference amplitude 2x that root.
      const double expected = cand == voted ? 2.0 / std::sqrt(8.0 * 2 * 3) / std::sqrt(2.0) : 0.0;
      EXPECT_NEAR(mag, expected, 1e-15) << "id=" << id << " cand=" << cand;
    }
  }
}

TEST(RunElection, CompiledCircuitMatchesLogicalEvolution) {
  for (const ElectionConfig& cfg : {example_one(), example_two()}) {
    const ElectionRun run = run_election(cfg);
    const RegisterLayout layout = layout_for(cfg);
    const GateSequence compiled = compile_voting_circuit(run, layout);
    for (const GateOp& op : compiled.ops()) ASSERT_LE(op.controls.size(), 2U);
    const std::size_t ancillas = compiled.num_qubits() - layout.total();
    StateVector evolved = prepare_initial(cfg).tensor(StateVector::zero(ancillas));
    apply_sequence(compiled, evolved);
    EXPECT_LE(evolved.distance(run.state.tensor(StateVector::zero(ancillas))), 1e-10);
  }
}

TEST(TallyExact, ExampleOne) {
  const ElectionConfig cfg = example_one();
  const TallyResult t = tally_exact(run_election(cfg).state, cfg);
  EXPECT_NEAR(t.probabilities[0], 0.5, 1e-12);
  EXPECT_NEAR(t.probabilities[1], 0.5, 1e-12);
  EXPECT_EQ(t.counts, (std::vector<std::size_t>{2, 2}));
  EXPECT_NEAR(t.post_selection_probability, 0.5, 1e-12);
  EXPECT_EQ(t.participating_votes, 4U);
  EXPECT_FALSE(t.rounding_tie);
}

TEST(TallyExact, ExampleTwo) {
  const ElectionConfig cfg = example_two();
  const TallyResult t = tally_exact(run_election(cfg).state, cfg);
  EXPECT_NEAR(t.probabilities[0], 0.375, 1e-12);
  EXPECT_NEAR(t.probabilities[1], 0.375, 1e-12);
  EXPECT_NEAR(t.probabilities[2], 0.25, 1e-12);
  EXPECT_EQ(t.counts, (std::vector<std::size_t>{3, 3, 2}));
  EXPECT_NEAR(t.post_selection_probability, 1.0 / 3.0, 1e-12);
}

TEST(TallyExact, FrozenOracleValues) {
  // Values frozen from brute_force_tally (test_support.hpp).
  const auto one = brute_force_tally(4, {0b00, 0b11}, {0b11, 0b00}, {0, 1, 0, 1});
  EXPECT_NEAR(one.post_selection_probability, 0.5, 1e-15);
  const auto two = brute_force_tally(8, {0, 1, 2}, {0, 1, 2}, {0, 1, 2, 0, 1, 0, 1, 2});
  EXPECT_NEAR(two.post_selection_probability, 1.0 / 3.0, 1e-15);
  const auto partial =
      brute_force_tally(4, {0b00, 0b11}, {0b11, 0b00}, {0, 1, 0, std::nullopt});
  EXPECT_NEAR(partial.post_selection_probability, 0.375, 1e-15);
  EXPECT_NEAR(partial.probabilities[0], 2.0 / 3.0, 1e-15);
}

TEST(TallyExact, PartialTurnout) {
  const ElectionConfig cfg = config_with(4, 2, {0, 1, 0, std::nullopt});
  const TallyResult t = tally_exact(run_election(cfg).state, cfg);
  EXPECT_NEAR(t.probabilities[0], 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(t.probabilities[1], 1.0 / 3.0, 1e-12);
  EXPECT_EQ(t.participating_votes, 3U);
  EXPECT_EQ(t.counts, (std::vector<std::size_t>{2, 1}));
  EXPECT_NEAR(t.post_selection_probability, 0.375, 1e-12);
}

TEST(TallyExact, AllAbstainIsNoVotes) {
  const ElectionConfig cfg = config_with(3, 2, {std::nullopt, std::nullopt, std::nullopt});
  EXPECT_QVOTE_ERROR(tally_exact(run_election(cfg).state, cfg), ErrorCode::kNoVotes);
}

TEST(TallyExact, EtaMatchesBranchSum) {
  const ElectionConfig cfg = config_with(5, 3, {0, std::nullopt, 2, 2, 1});
  const TallyResult t = tally_exact(run_election(cfg).state, cfg);
  const StateVector cand = prepare_candidate_state(cfg.kind, 3);
  const auto basis = resolved_basis_map(cfg);
  double eta_sq = 0.0;
  for (const Choice& c : cfg.choices) {
    if (!c) continue;
    // || psi_j - psi ||^2 with psi_j the candidate state with one sign flipped;
    // branch weight (1/N) * (1/2) * (1/2) from the ID, control and Hadamard.
    const double flipped = std::norm(cand.amplitude(basis[*c]));
    eta_sq += 4.0 * flipped / (cfg.num_voters * 4.0);
  }
  EXPECT_NEAR(t.eta * t.eta, eta_sq, 1e-10);
}

TEST(TallyExact, OracleEnumerationSmall) {
  for (std::size_t k : {2U, 3U}) {
    for (std::size_t n = 1; n <= 4; ++n) {
      for_each_choice_vector(n, k, [&](const std::vector<Choice>& choices) {
        const ElectionConfig cfg = config_with(n, k, choices);
        const std::size_t v = participating_votes(cfg);
        const StateVector state = run_election(cfg).state;
        if (v == 0) {
          EXPECT_QVOTE_ERROR(tally_exact(state, cfg), ErrorCode::kNoVotes);
          return;
        }
        const TallyResult t = tally_exact(state, cfg);
        const auto oracle = brute_force_tally(n, candidate_support(cfg.kind, k),
                                              resolved_basis_map(cfg), choices);
        for (std::size_t c = 0; c < k; ++c) {
          const auto votes = static_cast<double>(
              std::count(choices.begin(), choices.end(), Choice{c}));
          EXPECT_NEAR(t.probabilities[c], votes / static_cast<double>(v), 1e-10);
          EXPECT_NEAR(t.probabilities[c], oracle.probabilities[c], 1e-10);
          EXPECT_EQ(t.counts[c], static_cast<std::size_t>(votes));
        }
        const double k_eff = static_cast<double>(effective_candidates(cfg.kind, k));
        EXPECT_NEAR(t.post_selection_probability, v / (n * k_eff), 1e-10);
        EXPECT_NEAR(t.post_selection_probability, oracle.post_selection_probability, 1e-10);
      });
    }
  }
}

TEST(TallyExact, UniformBasisGeneralizes) {
  const ElectionConfig cfg = config_with(6, 4, {3, 0, 3, 2, std::nullopt, 3});
  ASSERT_EQ(cfg.kind, CandidateStateKind::kUniformBasis);
  const TallyResult t = tally_exact(run_election(cfg).state, cfg);
  EXPECT_EQ(t.counts, (std::vector<std::size_t>{1, 0, 1, 3}));
  EXPECT_NEAR(t.post_selection_probability, 5.0 / (6 * 4), 1e-12);
}

TEST(Properties, AbstainNeutrality) {
  const ElectionConfig base = config_with(3, 3, {0, 2, 2});
  ElectionConfig extended = config_with(4, 3, {0, 2, 2, std::nullopt});
  const TallyResult a = tally_exact(run_election(base).state, base);
  const TallyResult b = tally_exact(run_election(extended).state, extended);
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_NEAR(a.probabilities[k], b.probabilities[k], 1e-12);
  }
}

TEST(Properties, VoteOrderIndependence) {
  const ElectionConfig cfg = example_two();
  const StateVector reference = run_election(cfg).state;
  std::vector<std::size_t> order(cfg.num_voters);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937 gen(5);
  for (int trial = 0; trial < 10; ++trial) {
    std::shuffle(order.begin(), order.end(), gen);
    CentralizedElection election(cfg);
    for (std::size_t j : order) election.cast_vote(j, cfg.choices[j]);
    EXPECT_LE(election.state().distance(reference), 1e-12);
  }
}

TEST(TallySampled, ConvergesOnExamples) {
  for (const ElectionConfig& cfg : {example_one(), example_two()}) {
    const StateVector state = run_election(cfg).state;
    const TallyResult exact = tally_exact(state, cfg);
    const TallyResult sampled = tally_sampled(state, cfg, 100000, 42);
    ASSERT_TRUE(sampled.statistics);
    const auto& stats = *sampled.statistics;
    EXPECT_EQ(stats.stray, 0U);
    for (std::size_t k = 0; k < cfg.num_candidates; ++k) {
      const double p = exact.probabilities[k];
      const double sigma = std::sqrt(p * (1 - p) / static_cast<double>(stats.accepted));
      EXPECT_NEAR(stats.frequencies[k], p, 3 * sigma);
    }
    EXPECT_EQ(sampled.counts, exact.counts);
    const double p_acc = exact.post_selection_probability;
    EXPECT_NEAR(sampled.post_selection_probability, p_acc,
                3 * std::sqrt(p_acc * (1 - p_acc) / 100000.0));
  }
}

TEST(TallySampled, SingleShotIsDeterministic) {
  const ElectionConfig cfg = example_two();
  const StateVector state = run_election(cfg).state;
  // Find a seed whose single shot is accepted, then replay it.
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    try {
      const TallyResult a = tally_sampled(state, cfg, 1, seed);
      const TallyResult b = tally_sampled(state, cfg, 1, seed);
      EXPECT_EQ(a.statistics->frequencies, b.statistics->frequencies);
      return;
    } catch (const Error& e) {
      ASSERT_EQ(e.code(), ErrorCode::kInsufficientSamples);
    }
  }
  FAIL() << "no accepted single shot in 100 seeds";
}

TEST(TallySampled, Errors) {
  const ElectionConfig quiet = config_with(2, 2, {std::nullopt, std::nullopt});
  EXPECT_QVOTE_ERROR(tally_sampled(run_election(quiet).state, quiet, 1000, 1),
                     ErrorCode::kInsufficientSamples);
  const ElectionConfig cfg = example_one();
  EXPECT_QVOTE_ERROR(tally_sampled(run_election(cfg).state, cfg, 0, 1),
                     ErrorCode::kStatistics);
}

TEST(RoundHalfEven, Ties) {
  bool tie = false;
  EXPECT_EQ(round_half_even(2.5, &tie), 2U);
  EXPECT_TRUE(tie);
  EXPECT_EQ(round_half_even(3.5, &tie), 4U);
  EXPECT_EQ(round_half_even(2.4999, &tie), 2U);
  EXPECT_FALSE(tie);
  EXPECT_EQ(round_half_even(1.0 - 1e-13), 1U);
}

TEST(Config, Validation) {
  ElectionConfig cfg = example_one();
  cfg.choices.pop_back();
  EXPECT_QVOTE_ERROR(validate(cfg), ErrorCode::kConfig);
  cfg = example_one();
  cfg.choices[0] = 2;
  EXPECT_QVOTE_ERROR(validate(cfg), ErrorCode::kConfig);
  cfg = example_two();
  cfg.kind = CandidateStateKind::kBellPair;
  EXPECT_QVOTE_ERROR(validate(cfg), ErrorCode::kConfig);
  cfg = example_one();
  cfg.basis_map = {0b11, 0b11};
  EXPECT_QVOTE_ERROR(validate(cfg), ErrorCode::kConfig);
  cfg.basis_map = {0b01, 0b00};
  EXPECT_QVOTE_ERROR(validate(cfg), ErrorCode::kConfig);
  cfg.basis_map = {0b00, 0b11};
  EXPECT_NO_THROW(validate(cfg));
}

TEST(Config, SwappedBasisMapSwapsTally) {
  ElectionConfig cfg = example_one();
  cfg.choices = {0, 0, 0, 1};
  cfg.basis_map = {0b00, 0b11};
  const TallyResult t = tally_exact(run_election(cfg).state, cfg);
  EXPECT_EQ(t.counts, (std::vector<std::size_t>{3, 1}));
}

}  // namespace
}  // namespace qvote
