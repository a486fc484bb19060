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

#include "qvote/errors.hpp"

namespace qvote {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kCapacity: return "capacity error";
    case ErrorCode::kNormalization: return "normalization error";
    case ErrorCode::kShape: return "shape error";
    case ErrorCode::kUnitarity: return "unitarity error";
    case ErrorCode::kIndex: return "index error";
    case ErrorCode::kImpossibleOutcome: return "impossible outcome";
    case ErrorCode::kRewrite: return "rewrite error";
    case ErrorCode::kConfig: return "config error";
    case ErrorCode::kParse: return "parse error";
    case ErrorCode::kDoubleVote: return "double-vote error";
    case ErrorCode::kChannelLoss: return "channel loss";
    case ErrorCode::kProtocolIncomplete: return "protocol incomplete";
    case ErrorCode::kStatistics: return "statistics error";
    case ErrorCode::kInsufficientSamples: return "insufficient samples";
    case ErrorCode::kNoVotes: return "no votes cast";
  }
  return "error";
}

}  // namespace qvote
