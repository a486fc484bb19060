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
#include <span>

#include "qvote/compiler/gate_sequence.hpp"
#include "qvote/qstate/unitary.hpp"

namespace qvote {

/// Target-side factors for a doubly-controlled U built from two Toffolis.
///
/// With the controls off the target sees A^dagger B C = I; with both on it
/// sees A^dagger X B X C = residual_phase * U. The phase is whatever U's
/// determinant forces and is undone by a controlled phase on the controls.
struct AbcFactors {
  SingleQubitUnitary a;
  SingleQubitUnitary b;
  SingleQubitUnitary c;
  Complex residual_phase;
};

/// Z-Y-Z Euler factorization of `u` rearranged into A, B, C.
AbcFactors abc_decompose(const SingleQubitUnitary& u);

/// Doubly-controlled `u` as [C, CCX, B, CCX, A^dagger] on `target`, plus a
/// controlled phase between the two controls when the residual phase is
/// not 1.
GateSequence expand_ccu(const SingleQubitUnitary& u, std::size_t control1,
                        std::size_t control2, std::size_t target);

/// Rewrites the CCX at `position` as H * CCZ * H on its target. When the
/// CCX is already flanked by H on the target the triple collapses to a single
/// CCZ instead, so the two rewrites invert each other. Throws kRewrite if
/// the addressed op is not a CCX.
GateSequence ccx_to_ccz(const GateSequence& sequence, std::size_t position);
/// Mirror of ccx_to_ccz.
GateSequence ccz_to_ccx(const GateSequence& sequence, std::size_t position);

/// Gate count of expand_multi_controlled_z with c all-ones controls is
/// kMczPerControl * c + kMczOffset; each 0-valued control adds two X gates.
inline constexpr long kMczPerControl = 2;
inline constexpr long kMczOffset = -1;

/// Clean ancillas consumed by expand_multi_controlled_z for c controls.
std::size_t mcz_ancillas_required(std::size_t num_controls);

/// Multi-controlled Z from CCX/CZ/H/X primitives.
///
/// c = 1 emits one CZ. c >= 2 computes the conjunction of the first c - 1
/// controls into a ladder of c - 2 ancillas, applies the final CCZ through
/// H * CCX * H on the target, and uncomputes the ladder. 0-valued controls
/// are X-conjugated. Ancillas must start and end in |0>.
GateSequence expand_multi_controlled_z(std::span<const Control> controls,
                                       std::size_t target,
                                       std::span<const std::size_t> ancillas);

/// Lowers every op with more than two controls to primitives, allocating
/// ancillas from `ancilla_start` upward. Such ops must carry X, Z, or the
/// zero-phase gate diag(-1, 1). The result is widened to cover the ancillas.
GateSequence compile_to_primitives(const GateSequence& logical,
                                   std::size_t ancilla_start);

}  // namespace qvote
