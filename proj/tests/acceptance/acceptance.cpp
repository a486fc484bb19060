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

// Acceptance suite: one PASS/FAIL line per criterion. Exits nonzero if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "qvote/compiler/decompose.hpp"
#include "qvote/errors.hpp"
#include "qvote/distributed/simulation.hpp"
#include "qvote/election/centralized.hpp"
#include "qvote/election/tally.hpp"
#include "election_fixtures.hpp"

namespace {

using namespace qvote;
using testing::example_one;
using testing::example_two;
using testing::for_each_choice_vector;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  double time_limit_s;  // 0 = none
  std::function<Outcome()> body;
};

ElectionConfig config_with(std::size_t n, std::size_t k, std::vector<Choice> choices,
                           std::uint64_t seed = 0) {
  return {.num_voters = n,
          .num_candidates = k,
          .kind = default_candidate_state_kind(k),
          .choices = std::move(choices),
          .shots = 0,
          .seed = seed,
          .basis_map = {}};
}

std::string fmt(const char* pattern, double a, double b = 0, double c = 0) {
  char buffer[256];
  std::snprintf(buffer, sizeof buffer, pattern, a, b, c);
  return buffer;
}

Outcome golden(const ElectionConfig& cfg, const std::vector<double>& probs,
               const std::vector<std::size_t>& counts) {
  const TallyResult t = tally_exact(run_election(cfg).state, cfg);
  double worst = 0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    worst = std::max(worst, std::abs(t.probabilities[k] - probs[k]));
  }
  Outcome o;
  o.pass = worst <= 1e-12 && t.counts == counts;
  o.detail = fmt("max |p - expected| = %.3g", worst);
  return o;
}

// Criteria 3 and 4 share one enumeration.
struct EnumerationResult {
  std::size_t configs = 0;
  double worst_probability = 0;
  double worst_post_selection = 0;
  bool no_votes_ok = true;
};

const EnumerationResult& enumeration() {
  static const EnumerationResult result = [] {
    EnumerationResult r;
    for (std::size_t k : {2U, 3U}) {
      for (std::size_t n = 1; n <= 6; ++n) {
        for_each_choice_vector(n, k, [&](const std::vector<Choice>& choices) {
          ++r.configs;
          const ElectionConfig cfg = config_with(n, k, choices);
          const StateVector state = run_election(cfg).state;
          const std::size_t v = participating_votes(cfg);
          if (v == 0) {
            try {
              (void)tally_exact(state, cfg);
              r.no_votes_ok = false;
            } catch (const Error& e) {
              r.no_votes_ok = r.no_votes_ok && e.code() == ErrorCode::kNoVotes;
            }
            return;
          }
          const TallyResult t = tally_exact(state, cfg);
          for (std::size_t c = 0; c < k; ++c) {
            const double votes = static_cast<double>(
                std::count(choices.begin(), choices.end(), Choice{c}));
            r.worst_probability = std::max(
                r.worst_probability, std::abs(t.probabilities[c] - votes / static_cast<double>(v)));
          }
          const double k_eff = static_cast<double>(effective_candidates(cfg.kind, k));
          r.worst_post_selection =
              std::max(r.worst_post_selection,
                       std::abs(t.post_selection_probability -
                                static_cast<double>(v) / (static_cast<double>(n) * k_eff)));
        });
      }
    }
    return r;
  }();
  return result;
}

Outcome criterion_five() {
  const SingleQubitUnitary z = SingleQubitUnitary::pauli_z();
  // (a) expand_ccu(Z) against diag(1, ..., 1, -1).
  const std::vector<Complex> m = composed_matrix(expand_ccu(z, 0, 1, 2));
  double ccu_err = 0;
  for (std::size_t r = 0; r < 8; ++r) {
    for (std::size_t c = 0; c < 8; ++c) {
      const Complex expected = r == c ? (r == 7 ? -1.0 : 1.0) : 0.0;
      ccu_err = std::max(ccu_err, std::abs(m[r * 8 + c] - expected));
    }
  }
  // (b) CCX -> CCZ -> CCX is structurally the identity rewrite.
  GateSequence ccx(3);
  ccx.append(controlled("CCX", SingleQubitUnitary::pauli_x(), {{0, true}, {1, true}}, 2));
  const GateSequence there = ccx_to_ccz(ccx, 0);
  const GateSequence back = ccz_to_ccx(there, 1);
  const std::vector<Complex> ccx_matrix = composed_matrix(ccx);
  const std::vector<Complex> ccz_matrix = composed_matrix(there);
  double rewrite_err = 0;
  for (std::size_t i = 0; i < ccx_matrix.size(); ++i) {
    rewrite_err = std::max(rewrite_err, std::abs(ccx_matrix[i] - ccz_matrix[i]));
  }
  const bool round_trip = dump_circuit(back) == dump_circuit(ccx) && rewrite_err <= 1e-12;
  // (c) multi-controlled Z against direct application.
  double mcz_err = 0;
  for (std::size_t c = 1; c <= 12; ++c) {
    std::vector<Control> controls;
    for (std::size_t i = 0; i < c; ++i) controls.push_back({i, i % 4 != 2});
    const std::size_t needed = mcz_ancillas_required(c);
    std::vector<std::size_t> ancillas(needed);
    std::iota(ancillas.begin(), ancillas.end(), c + 1);
    const GateSequence seq = expand_multi_controlled_z(controls, c, ancillas);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      std::mt19937_64 gen(seed * 1000 + c);
      std::normal_distribution<double> normal;
      std::vector<Complex> amps(std::size_t{1} << (c + 1));
      for (Complex& a : amps) a = {normal(gen), normal(gen)};
      const StateVector psi = StateVector::from_amplitudes(amps);
      StateVector expected = psi;
      expected.apply_controlled({controls, c}, z);
      StateVector actual = needed ? psi.tensor(StateVector::zero(needed)) : psi;
      apply_sequence(seq, actual);
      if (needed) expected = expected.tensor(StateVector::zero(needed));
      mcz_err = std::max(mcz_err, actual.distance(expected));
    }
  }
  Outcome o;
  o.pass = ccu_err <= 1e-8 && round_trip && mcz_err <= 1e-10;
  o.detail = "ccu err " + fmt("%.3g", ccu_err) + ", round trip " +
             (round_trip ? "exact" : "BROKEN") + ", mcz max distance " + fmt("%.3g", mcz_err) +
             " over c = 1..12 x 20 states";
  return o;
}

Outcome criterion_six() {
  std::vector<long> xs, ys;
  for (std::size_t n_voters : {4U, 8U, 16U, 32U}) {
    std::vector<Choice> choices(n_voters);
    for (std::size_t j = 0; j < n_voters; ++j) choices[j] = j % 2;
    const ElectionConfig cfg = config_with(n_voters, 2, choices);
    const ElectionRun run = run_election(cfg);
    const RegisterLayout layout = layout_for(cfg);
    const GateSequence compiled = compile_voting_circuit(run, layout);
    xs.push_back(static_cast<long>(n_voters * layout.id_qubits));
    ys.push_back(static_cast<long>(compiled.counts().total()));
  }
  // Exact collinearity test in integers: every point on the line through
  // the first two.
  long worst_cross = 0;
  for (std::size_t i = 2; i < xs.size(); ++i) {
    const long cross = (ys[1] - ys[0]) * (xs[i] - xs[0]) - (ys[i] - ys[0]) * (xs[1] - xs[0]);
    worst_cross = std::max(worst_cross, std::abs(cross));
  }
  // Least-squares residual for the report.
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += static_cast<double>(xs[i]) / n;
    my += static_cast<double>(ys[i]) / n;
  }
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (static_cast<double>(xs[i]) - mx) * (static_cast<double>(ys[i]) - my);
    sxx += (static_cast<double>(xs[i]) - mx) * (static_cast<double>(xs[i]) - mx);
  }
  const double a = sxy / sxx;
  const double b = my - a * mx;
  double residual = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    residual += std::pow(static_cast<double>(ys[i]) - (a * static_cast<double>(xs[i]) + b), 2);
  }
  // Doubling N never grows count faster than N * n.
  bool sub_linear = true;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    sub_linear = sub_linear && ys[i] * xs[i - 1] <= ys[i - 1] * xs[i];
  }
  Outcome o;
  o.pass = worst_cross == 0 && sub_linear;
  std::string points;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    points += (i ? " " : "") + std::to_string(xs[i]) + "->" + std::to_string(ys[i]);
  }
  o.detail = "N*n->count " + points + "; fit a=" + fmt("%.4g", a) + " b=" + fmt("%.4g", b) +
             " residual " + fmt("%.4g", residual) + " (need 0); doubling bound " +
             (sub_linear ? "holds" : "violated");
  return o;
}

Outcome criterion_seven() {
  std::size_t good_runs[2] = {0, 0};
  int idx = 0;
  for (const ElectionConfig& cfg : {example_one(), example_two()}) {
    const StateVector state = run_election(cfg).state;
    const TallyResult exact = tally_exact(state, cfg);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const TallyResult s = tally_sampled(state, cfg, 100000, seed);
      bool inside = true;
      for (std::size_t k = 0; k < cfg.num_candidates; ++k) {
        const double p = exact.probabilities[k];
        const double sigma =
            std::sqrt(p * (1 - p) / static_cast<double>(s.statistics->accepted));
        inside = inside && std::abs(s.statistics->frequencies[k] - p) <= 3 * sigma;
      }
      good_runs[idx] += inside;
    }
    ++idx;
  }
  Outcome o;
  o.pass = good_runs[0] >= 99 && good_runs[1] >= 99;
  o.detail = "runs inside 3 sigma: example 1 " + std::to_string(good_runs[0]) +
             "/100, example 2 " + std::to_string(good_runs[1]) + "/100";
  return o;
}

// Double-vote probe shared by criteria 8 and 9, feeding criterion 10.
struct DoubleVoteLedger {
  std::size_t attempts = 0;
  std::size_t rejected_clean = 0;
};
DoubleVoteLedger g_double_votes;

void probe_double_votes(distributed::DistributedElection& election) {
  for (std::size_t j = 0; j < election.config().num_voters; ++j) {
    if (!election.flag_set(j)) continue;
    ++g_double_votes.attempts;
    const std::size_t gates = election.gates_applied();
    const std::size_t events = election.trace().size();
    bool rejected = false;
    try {
      election.voting_round(j, 0);
    } catch (const Error& e) {
      rejected = e.code() == ErrorCode::kDoubleVote;
    }
    const auto& trace = election.trace();
    bool clean = rejected && election.gates_applied() == gates &&
                 trace.size() == events + 1 &&
                 trace.back().action == distributed::Action::kReject;
    g_double_votes.rejected_clean += clean;
  }
}

Outcome criterion_eight() {
  std::size_t runs = 0;
  std::size_t matches = 0;
  for (auto execution : {distributed::VoteExecution::kDirect,
                         distributed::VoteExecution::kDecomposed}) {
    for (std::size_t n = 1; n <= 4; ++n) {
      for_each_choice_vector(n, 2, [&](const std::vector<Choice>& choices) {
        const ElectionConfig cfg = config_with(n, 2, choices, runs);
        distributed::DistributedElection election(cfg, {.execution = execution});
        election.vote_all();
        const distributed::DistributedTally t = election.tally(TallyMode::kExact);
        std::vector<std::size_t> expected(2, 0);
        for (const Choice& c : choices) {
          if (c) ++expected[*c];
        }
        ++runs;
        matches += t.aggregate.counts == expected;
        probe_double_votes(election);
      });
    }
  }
  Outcome o;
  o.pass = matches == runs;
  o.detail = std::to_string(matches) + "/" + std::to_string(runs) +
             " runs match classical counts (direct and decomposed execution)";
  return o;
}

Outcome criterion_nine() {
  distributed::AdversaryAction attack;
  attack.trigger = {.voter = 0,
                    .direction = distributed::Direction::kToVoter,
                    .stage = distributed::Stage::kVerification,
                    .round = std::nullopt,
                    .target = distributed::TargetFilter::kVerification};
  attack.kind = distributed::AdversaryAction::Kind::kMeasure;
  attack.basis = distributed::AdversaryAction::Basis::kZ;
  std::size_t detected = 0;
  std::size_t clean_passed = 0;
  for (std::uint64_t trial = 0; trial < 1000; ++trial) {
    {
      distributed::DistributedElection election(config_with(1, 2, {0}, trial));
      election.inject_adversary(attack);
      election.vote_all();
      detected += !election.verify_entanglement(0, 200, 0.5).intact;
      probe_double_votes(election);
    }
    {
      distributed::DistributedElection election(config_with(1, 2, {0}, trial + 1000000));
      election.vote_all();
      clean_passed += election.verify_entanglement(0, 200, 0.5).intact;
      probe_double_votes(election);
    }
  }
  Outcome o;
  o.pass = detected >= 999 && clean_passed >= 999;
  o.detail = "tampered flagged " + std::to_string(detected) + "/1000, untampered intact " +
             std::to_string(clean_passed) + "/1000";
  return o;
}

Outcome criterion_ten() {
  // Also exercise the golden examples, including the W-state path.
  for (const ElectionConfig& cfg : {example_one(), example_two()}) {
    distributed::DistributedElection election(cfg);
    election.vote_all();
    probe_double_votes(election);
  }
  Outcome o;
  o.pass = g_double_votes.attempts > 0 &&
           g_double_votes.rejected_clean == g_double_votes.attempts;
  o.detail = std::to_string(g_double_votes.rejected_clean) + "/" +
             std::to_string(g_double_votes.attempts) +
             " second rounds rejected with zero gates applied";
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "golden example 1 (N=4, K=2)", 1.0,
       [] { return golden(example_one(), {0.5, 0.5}, {2, 2}); }},
      {2, "golden example 2 (N=8, K=3)", 1.0,
       [] { return golden(example_two(), {0.375, 0.375, 0.25}, {3, 3, 2}); }},
      {3, "oracle equivalence, N <= 6, K in {2, 3}", 120.0,
       [] {
         const EnumerationResult& r = enumeration();
         return Outcome{r.worst_probability <= 1e-10 && r.no_votes_ok,
                        std::to_string(r.configs) + " configs, max |p - votes/V| = " +
                            fmt("%.3g", r.worst_probability)};
       }},
      {4, "post-selection law V/(N K_eff)", 120.0,
       [] {
         const EnumerationResult& r = enumeration();
         return Outcome{r.worst_post_selection <= 1e-10,
                        std::to_string(r.configs) + " configs, max deviation " +
                            fmt("%.3g", r.worst_post_selection)};
       }},
      {5, "decomposition correctness", 0.0, criterion_five},
      {6, "linear gate scaling in N*n", 0.0, criterion_six},
      {7, "sampled tally convergence, 100 x 1e5 shots", 60.0, criterion_seven},
      {8, "distributed fidelity, N <= 4, K = 2", 60.0, criterion_eight},
      {9, "tamper detection, 1000 trials x 200 rounds", 120.0, criterion_nine},
      {10, "double-vote prevention", 0.0, criterion_ten},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.time_limit_s == 0 || seconds < c.time_limit_s;
    const bool pass = o.pass && in_time;
    failures += !pass;
    std::printf("criterion %2d %s  %s: %s [%.2f s%s]\n", c.id, pass ? "PASS" : "FAIL",
                c.title.c_str(), o.detail.c_str(), seconds,
                in_time ? "" : ", over time limit");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
