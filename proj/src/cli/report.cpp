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

#include "qvote/cli/report.hpp"

#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "qvote/errors.hpp"

namespace qvote::cli {
namespace {

using Json = nlohmann::ordered_json;

std::string bits(std::uint64_t pattern, std::size_t width) {
  std::string out(width, '0');
  for (std::size_t i = 0; i < width; ++i) {
    if ((pattern >> (width - 1 - i)) & 1U) out[i] = '1';
  }
  return out;
}

Json counts_json(const GateCounts& c) {
  return Json{{"one_qubit", c.one_qubit},
              {"two_qubit", c.two_qubit},
              {"three_qubit", c.three_qubit},
              {"multi_qubit", c.multi_qubit},
              {"total", c.total()}};
}

GateCounts counts_from(const Json& j) {
  return {j.at("one_qubit").get<std::size_t>(), j.at("two_qubit").get<std::size_t>(),
          j.at("three_qubit").get<std::size_t>(), j.at("multi_qubit").get<std::size_t>()};
}

Json choices_json(const std::vector<Choice>& choices) {
  Json out = Json::array();
  for (const Choice& c : choices) out.push_back(c ? Json(*c) : Json(nullptr));
  return out;
}

std::vector<Choice> choices_from(const Json& j) {
  std::vector<Choice> out;
  for (const Json& c : j) {
    out.push_back(c.is_null() ? Choice{} : Choice{c.get<std::size_t>()});
  }
  return out;
}

Json tally_json(const TallyResult& t) {
  Json out{{"mode", t.mode == TallyMode::kExact ? "exact" : "sampled"},
           {"probabilities", t.probabilities},
           {"counts", t.counts},
           {"participating_votes", t.participating_votes},
           {"post_selection_probability", t.post_selection_probability},
           {"eta", t.eta},
           {"rounding_tie", t.rounding_tie}};
  if (t.statistics) {
    const ShotStatistics& s = *t.statistics;
    out["statistics"] = Json{{"shots", s.shots},
                             {"accepted", s.accepted},
                             {"frequencies", s.frequencies},
                             {"standard_errors", s.standard_errors},
                             {"stray", s.stray}};
  }
  return out;
}

TallyResult tally_from(const Json& j) {
  TallyResult t;
  t.mode = j.at("mode").get<std::string>() == "exact" ? TallyMode::kExact : TallyMode::kSampled;
  t.probabilities = j.at("probabilities").get<std::vector<double>>();
  t.counts = j.at("counts").get<std::vector<std::size_t>>();
  t.participating_votes = j.at("participating_votes").get<std::size_t>();
  t.post_selection_probability = j.at("post_selection_probability").get<double>();
  t.eta = j.at("eta").get<double>();
  t.rounding_tie = j.at("rounding_tie").get<bool>();
  if (j.contains("statistics")) {
    const Json& s = j.at("statistics");
    t.statistics = ShotStatistics{s.at("shots").get<std::size_t>(),
                                  s.at("accepted").get<std::size_t>(),
                                  s.at("frequencies").get<std::vector<double>>(),
                                  s.at("standard_errors").get<std::vector<double>>(),
                                  s.at("stray").get<std::size_t>()};
  }
  return t;
}

std::string fmt(double value) {
  std::ostringstream out;
  out << std::setprecision(6) << value;
  return out.str();
}

std::string counts_line(const GateCounts& c) {
  return "1q=" + std::to_string(c.one_qubit) + " 2q=" + std::to_string(c.two_qubit) +
         " 3q=" + std::to_string(c.three_qubit) + " multi=" + std::to_string(c.multi_qubit) +
         " total=" + std::to_string(c.total());
}

}  // namespace

std::string to_json_text(const StructuredOutput& output) {
  const ElectionConfig& cfg = output.config.election;
  const std::size_t width = candidate_qubit_count(cfg.kind, cfg.num_candidates);
  Json config{{"voters", cfg.num_voters},
              {"candidates", cfg.num_candidates},
              {"candidate_state", std::string(to_string(cfg.kind))},
              {"shots", cfg.shots},
              {"seed", cfg.seed},
              {"pairs_per_voter", output.config.pairs_per_voter}};
  Json basis = Json::array();
  for (std::uint64_t b : resolved_basis_map(cfg)) basis.push_back(bits(b, width));
  config["basis_map"] = basis;
  if (output.echo_choices) config["choices"] = choices_json(cfg.choices);

  Json root{{"schema", output.schema},
            {"mode", output.mode},
            {"status", output.status},
            {"config", config},
            {"tally", output.tally ? tally_json(*output.tally) : Json(nullptr)}};
  if (output.gate_counts) {
    root["gate_counts"] = Json{{"logical", counts_json(output.gate_counts->logical)},
                               {"compiled", counts_json(output.gate_counts->compiled)},
                               {"ancillas", output.gate_counts->ancillas}};
  }
  if (output.distributed) {
    const DistributedReport& d = *output.distributed;
    Json verification = Json::array();
    for (const auto& v : d.verification) {
      verification.push_back(Json{{"voter", v.voter},
                                  {"rounds", v.rounds},
                                  {"setup_pairs_used", v.setup_pairs_used},
                                  {"xx", v.xx},
                                  {"zz", v.zz},
                                  {"threshold", v.threshold},
                                  {"verdict", v.intact ? "intact" : "disturbed"}});
    }
    Json section{{"empty_ballots", d.empty_ballots},
                 {"unresolved", d.unresolved},
                 {"inconsistent_controls", d.inconsistent_controls},
                 {"rounds_run", d.rounds_run},
                 {"gates_applied", d.gates_applied},
                 {"verification", verification}};
    if (d.ballots) {
      section["unsafe_revealed_ballots"] = choices_json(*d.ballots);
      section["watermark"] = "UNSAFE: per-voter ballots revealed; testing only";
    }
    root["distributed"] = section;
  }
  return root.dump(2) + "\n";
}

StructuredOutput parse_structured(std::string_view text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const Json::exception& e) {
    fail(ErrorCode::kParse, std::string("structured output: ") + e.what());
  }
  try {
    StructuredOutput out;
    out.schema = root.at("schema").get<std::string>();
    if (out.schema != kOutputSchema) {
      fail(ErrorCode::kParse, "unsupported output schema '" + out.schema + "'");
    }
    out.mode = root.at("mode").get<std::string>();
    out.status = root.at("status").get<std::string>();
    const Json& c = root.at("config");
    ElectionConfig& cfg = out.config.election;
    cfg.num_voters = c.at("voters").get<std::size_t>();
    cfg.num_candidates = c.at("candidates").get<std::size_t>();
    const auto kind = parse_candidate_state_kind(c.at("candidate_state").get<std::string>());
    if (!kind) fail(ErrorCode::kParse, "unknown candidate_state");
    cfg.kind = *kind;
    cfg.shots = c.at("shots").get<std::size_t>();
    cfg.seed = c.at("seed").get<std::uint64_t>();
    out.config.pairs_per_voter = c.at("pairs_per_voter").get<std::size_t>();
    for (const Json& b : c.at("basis_map")) {
      cfg.basis_map.push_back(std::stoull(b.get<std::string>(), nullptr, 2));
    }
    out.echo_choices = c.contains("choices");
    if (out.echo_choices) cfg.choices = choices_from(c.at("choices"));
    if (!root.at("tally").is_null()) out.tally = tally_from(root.at("tally"));
    if (root.contains("gate_counts")) {
      const Json& g = root.at("gate_counts");
      out.gate_counts = GateCountReport{counts_from(g.at("logical")),
                                        counts_from(g.at("compiled")),
                                        g.at("ancillas").get<std::size_t>()};
    }
    if (root.contains("distributed")) {
      const Json& d = root.at("distributed");
      DistributedReport r;
      r.empty_ballots = d.at("empty_ballots").get<std::size_t>();
      r.unresolved = d.at("unresolved").get<std::size_t>();
      r.inconsistent_controls = d.at("inconsistent_controls").get<std::size_t>();
      r.rounds_run = d.at("rounds_run").get<std::size_t>();
      r.gates_applied = d.at("gates_applied").get<std::size_t>();
      for (const Json& v : d.at("verification")) {
        distributed::VerificationResult x;
        x.voter = v.at("voter").get<std::size_t>();
        x.rounds = v.at("rounds").get<std::size_t>();
        x.setup_pairs_used = v.at("setup_pairs_used").get<std::size_t>();
        x.xx = v.at("xx").get<double>();
        x.zz = v.at("zz").get<double>();
        x.threshold = v.at("threshold").get<double>();
        x.intact = v.at("verdict").get<std::string>() == "intact";
        r.verification.push_back(x);
      }
      if (d.contains("unsafe_revealed_ballots")) {
        r.ballots = choices_from(d.at("unsafe_revealed_ballots"));
      }
      out.distributed = std::move(r);
    }
    return out;
  } catch (const Json::exception& e) {
    fail(ErrorCode::kParse, std::string("structured output: ") + e.what());
  }
}

std::string emit_report(const StructuredOutput& output, OutputFormat format) {
  if (format == OutputFormat::kStructured) return to_json_text(output);
  const ElectionConfig& cfg = output.config.election;
  std::ostringstream out;
  out << "qvote " << output.mode << " election: " << cfg.num_voters << " voters, "
      << cfg.num_candidates << " candidates (" << to_string(cfg.kind) << ")\n";
  out << "status: " << output.status << "\n";
  if (output.tally) {
    const TallyResult& t = *output.tally;
    out << "tally (" << (t.mode == TallyMode::kExact ? "exact" : "sampled") << "):\n";
    out << "  candidate  probability  count\n";
    for (std::size_t k = 0; k < t.counts.size(); ++k) {
      out << "  " << std::left << std::setw(9) << k << "  " << std::setw(11)
          << fmt(t.probabilities[k]) << "  " << t.counts[k] << "\n";
    }
    out << "post-selection probability: " << fmt(t.post_selection_probability) << "\n";
    out << "participating votes: " << t.participating_votes << "\n";
    if (t.rounding_tie) out << "warning: a count sat on a rounding tie\n";
    if (t.statistics) {
      out << "shots: " << t.statistics->shots << " accepted: " << t.statistics->accepted
          << " stray: " << t.statistics->stray << "\n";
    }
  }
  if (output.gate_counts) {
    out << "gate counts (logical):  " << counts_line(output.gate_counts->logical) << "\n";
    out << "gate counts (compiled): " << counts_line(output.gate_counts->compiled)
        << " ancillas=" << output.gate_counts->ancillas << "\n";
  }
  if (output.distributed) {
    const DistributedReport& d = *output.distributed;
    out << "empty ballots: " << d.empty_ballots << " unresolved: " << d.unresolved
        << " inconsistent controls: " << d.inconsistent_controls << "\n";
    out << "voting rounds: " << d.rounds_run << " gates applied: " << d.gates_applied << "\n";
    for (const auto& v : d.verification) {
      out << "verification voter " << v.voter << ": xx=" << fmt(v.xx) << " zz=" << fmt(v.zz)
          << " threshold=" << fmt(v.threshold) << " "
          << (v.intact ? "intact" : "disturbed") << "\n";
    }
    if (d.ballots) {
      out << "UNSAFE: per-voter ballots revealed; testing only\n";
      for (std::size_t j = 0; j < d.ballots->size(); ++j) {
        const Choice& b = (*d.ballots)[j];
        out << "  voter " << j << ": " << (b ? std::to_string(*b) : "-") << "\n";
      }
    }
  }
  return out.str();
}

}  // namespace qvote::cli
