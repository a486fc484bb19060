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
#include <string>
#include <string_view>
#include <vector>

#include "qvote/distributed/protocol.hpp"
#include "qvote/election/config.hpp"

namespace qvote::cli {

inline constexpr int kConfigSchemaVersion = 1;

/// Contents of an election config file.
///
/// The format is one `key = value` per line; `#` starts a comment. Keys:
///
///   schema          = 1                  (optional; must be 1)
///   voters          = 4                  (required)
///   candidates      = 2                  (required)
///   candidate_state = bell-pair          (bell-pair | w-state | uniform-basis)
///   choices         = 0 1 0 -            (required; `-` or `abstain` abstains)
///   shots           = 0                  (0 = exact tally)
///   seed            = 0
///   pairs_per_voter = 1                  (distributed mode)
///   basis_map       = 11 00              (bit strings, one per candidate)
///
/// Lists accept spaces or commas as separators.
struct ConfigFile {
  ElectionConfig election;
  std::size_t pairs_per_voter = 1;
};

/// Throws kParse ("line N: field 'key': ...") for malformed text and
/// kConfig for a well-formed config that breaks an election invariant.
ConfigFile parse_config(std::string_view text);

/// Canonical text of `config`; parse_config(format_config(c)) == c.
std::string format_config(const ConfigFile& config);

/// Adversary spec: one action per line, as space-separated key=value
/// fields. Keys: voter, direction (to-voter | to-center), stage (setup |
/// voting | verification), round (number or `*`), target (any | candidate |
/// verification | control), kind (measure | phase-tamper | bit-flip |
/// swap-with-fresh | loss | delay), basis (z | x), angle (radians), delay
/// (ticks). Throws kParse with line diagnostics.
std::vector<distributed::AdversaryAction> parse_adversary_spec(std::string_view text);

}  // namespace qvote::cli
