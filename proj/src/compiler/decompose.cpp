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

#include "qvote/compiler/decompose.hpp"

#include <cmath>
#include <unordered_set>

#include "qvote/errors.hpp"

namespace qvote {

namespace {

constexpr double kAngleEpsilon = 1e-14;
constexpr double kFactorTolerance = 1e-8;

const SingleQubitUnitary kX = SingleQubitUnitary::pauli_x();
const SingleQubitUnitary kZ = SingleQubitUnitary::pauli_z();
const SingleQubitUnitary kH = SingleQubitUnitary::hadamard();

bool is_gate(const GateOp& op, const SingleQubitUnitary& gate) {
  return op.gate.approx_equal(gate, kIdentityTolerance);
}

bool is_ccx(const GateOp& op) { return op.controls.size() == 2 && is_gate(op, kX); }
bool is_ccz(const GateOp& op) { return op.controls.size() == 2 && is_gate(op, kZ); }

bool is_h_on(const GateOp& op, std::size_t target) {
  return op.controls.empty() && op.target == target && is_gate(op, kH);
}

std::size_t width_of(std::span<const Control> controls, std::size_t target,
                     std::span<const std::size_t> extra) {
  std::size_t width = target + 1;
  for (const Control& c : controls) width = std::max(width, c.qubit + 1);
  for (std::size_t q : extra) width = std::max(width, q + 1);
  return width;
}

// Shared body of the CCX <-> CCZ rewrites: `matches` picks the
// addressed gate, `to` is what it becomes under H conjugation.
GateSequence swap_h_conjugate(const GateSequence& sequence,
                              std::size_t position,
                              bool (*matches)(const GateOp&),
                              const SingleQubitUnitary& to,
                              const std::string& to_label) {
  if (position >= sequence.size()) {
    fail(ErrorCode::kRewrite, "no op at position " + std::to_string(position));
  }
  const GateOp& op = sequence[position];
  if (!matches(op)) {
    fail(ErrorCode::kRewrite, "op '" + op.label + "' at position " +
                                  std::to_string(position) +
                                  " has the wrong kind for this rewrite");
  }
  GateSequence out = sequence;
  GateOp replaced = controlled(to_label, to, op.controls, op.target);
  const bool flanked = position > 0 && position + 1 < sequence.size() &&
                       is_h_on(sequence[position - 1], op.target) &&
                       is_h_on(sequence[position + 1], op.target);
  if (flanked) {
    out.splice(position - 1, 3, {std::move(replaced)});
  } else {
    out.splice(position, 1,
               {single("H", kH, op.target), std::move(replaced),
                single("H", kH, op.target)});
  }
  return out;
}

}  // namespace

AbcFactors abc_decompose(const SingleQubitUnitary& u) {
  // u = e^{i alpha} Rz(beta) Ry(gamma) Rz(delta).
  const Matrix2& m = u.matrix();
  const Complex det = m[0] * m[3] - m[1] * m[2];
  const double alpha = std::arg(det) / 2.0;
  const Matrix2 v = scale(m, std::polar(1.0, -alpha));
  const double gamma = 2.0 * std::atan2(std::abs(v[2]), std::abs(v[0]));
  const double sum = std::abs(v[0]) > kAngleEpsilon ? -2.0 * std::arg(v[0]) : 0.0;
  const double diff = std::abs(v[2]) > kAngleEpsilon ? 2.0 * std::arg(v[2]) : 0.0;
  const double beta = (sum + diff) / 2.0;
  const double delta = (sum - diff) / 2.0;

  // Textbook factors satisfy A'B'C' = I and A'XB'XC' = e^{-i alpha} u;
  // the target sees A' last, so it is stored here as A = A'^dagger.
  const SingleQubitUnitary a_prime =
      SingleQubitUnitary::rz(beta) * SingleQubitUnitary::ry(gamma / 2.0);
  AbcFactors f{
      .a = a_prime.adjoint(),
      .b = SingleQubitUnitary::ry(-gamma / 2.0) *
           SingleQubitUnitary::rz(-(delta + beta) / 2.0),
      .c = SingleQubitUnitary::rz((delta - beta) / 2.0),
      .residual_phase = std::polar(1.0, -alpha),
  };
  if (std::abs(f.residual_phase - 1.0) <= kIdentityTolerance) {
    f.residual_phase = 1.0;
  }

  const Matrix2 off = multiply(f.a.adjoint().matrix(),
                               multiply(f.b.matrix(), f.c.matrix()));
  const Matrix2 on = multiply(
      f.a.adjoint().matrix(),
      multiply(kX.matrix(),
               multiply(f.b.matrix(), multiply(kX.matrix(), f.c.matrix()))));
  if (max_abs_diff(off, SingleQubitUnitary::identity().matrix()) >
          kFactorTolerance ||
      max_abs_diff(on, scale(m, f.residual_phase)) > kFactorTolerance) {
    fail(ErrorCode::kUnitarity, "ABC factorization failed to reconstruct u");
  }
  return f;
}

GateSequence expand_ccu(const SingleQubitUnitary& u, std::size_t control1,
                        std::size_t control2, std::size_t target) {
  if (control1 == control2 || control1 == target || control2 == target) {
    fail(ErrorCode::kIndex, "expand_ccu needs three distinct qubits");
  }
  const AbcFactors f = abc_decompose(u);
  const std::vector<Control> ctrls{{control1, true}, {control2, true}};
  GateSequence seq(width_of(ctrls, target, {}));
  seq.append(single("C", f.c, target));
  seq.append(controlled("CCX", kX, ctrls, target));
  seq.append(single("B", f.b, target));
  seq.append(controlled("CCX", kX, ctrls, target));
  seq.append(single("Adg", f.a.adjoint(), target));
  if (f.residual_phase != Complex(1.0)) {
    seq.append(controlled("CP",
                          SingleQubitUnitary::phase(-std::arg(f.residual_phase)),
                          {{control1, true}}, control2));
  }
  return seq;
}

GateSequence ccx_to_ccz(const GateSequence& sequence, std::size_t position) {
  return swap_h_conjugate(sequence, position, is_ccx, kZ, "CCZ");
}

GateSequence ccz_to_ccx(const GateSequence& sequence, std::size_t position) {
  return swap_h_conjugate(sequence, position, is_ccz, kX, "CCX");
}

std::size_t mcz_ancillas_required(std::size_t num_controls) {
  return num_controls >= 3 ? num_controls - 2 : 0;
}

GateSequence expand_multi_controlled_z(std::span<const Control> controls,
                                       std::size_t target,
                                       std::span<const std::size_t> ancillas) {
  const std::size_t c = controls.size();
  if (c == 0) fail(ErrorCode::kIndex, "multi-controlled Z needs a control");
  const std::size_t needed = mcz_ancillas_required(c);
  if (ancillas.size() < needed) {
    fail(ErrorCode::kCapacity, std::to_string(c) + " controls need " +
                                   std::to_string(needed) + " ancillas, got " +
                                   std::to_string(ancillas.size()));
  }
  std::unordered_set<std::size_t> used{target};
  for (const Control& ctl : controls) {
    if (!used.insert(ctl.qubit).second) {
      fail(ErrorCode::kIndex, "qubit " + std::to_string(ctl.qubit) + " repeated");
    }
  }
  for (std::size_t i = 0; i < needed; ++i) {
    if (!used.insert(ancillas[i]).second) {
      fail(ErrorCode::kIndex,
           "ancilla " + std::to_string(ancillas[i]) + " collides");
    }
  }

  GateSequence seq(width_of(controls, target, ancillas.first(needed)));
  auto flip_zero_controls = [&] {
    for (const Control& ctl : controls) {
      if (!ctl.value) seq.append(single("X", kX, ctl.qubit));
    }
  };
  auto on = [](std::size_t q) { return Control{q, true}; };

  flip_zero_controls();
  if (c == 1) {
    seq.append(controlled("CZ", kZ, {on(controls[0].qubit)}, target));
  } else {
    // ladder[i] holds the conjunction of controls[0..i+1].
    std::vector<GateOp> ladder;
    for (std::size_t i = 0; i < needed; ++i) {
      const Control lhs = i == 0 ? on(controls[0].qubit) : on(ancillas[i - 1]);
      ladder.push_back(controlled("CCX", kX, {lhs, on(controls[i + 1].qubit)},
                                  ancillas[i]));
    }
    for (const GateOp& op : ladder) seq.append(op);
    const Control top = needed == 0 ? on(controls[0].qubit)
                                    : on(ancillas[needed - 1]);
    seq.append(single("H", kH, target));
    seq.append(controlled("CCX", kX, {top, on(controls[c - 1].qubit)}, target));
    seq.append(single("H", kH, target));
    for (auto it = ladder.rbegin(); it != ladder.rend(); ++it) seq.append(*it);
  }
  flip_zero_controls();
  return seq;
}

GateSequence compile_to_primitives(const GateSequence& logical,
                                   std::size_t ancilla_start) {
  if (ancilla_start < logical.num_qubits()) {
    fail(ErrorCode::kIndex, "ancillas overlap the logical register");
  }
  GateSequence out(logical.num_qubits());
  for (const GateOp& op : logical.ops()) {
    if (op.controls.size() <= 2) {
      out.append(op);
      continue;
    }
    std::vector<std::size_t> ancillas(mcz_ancillas_required(op.controls.size()));
    for (std::size_t i = 0; i < ancillas.size(); ++i) {
      ancillas[i] = ancilla_start + i;
    }
    out.widen(ancilla_start + ancillas.size());
    const GateSequence mcz =
        expand_multi_controlled_z(op.controls, op.target, ancillas);
    if (is_gate(op, kZ)) {
      out.append(mcz);
    } else if (is_gate(op, SingleQubitUnitary::zero_phase())) {
      out.append(single("X", kX, op.target));
      out.append(mcz);
      out.append(single("X", kX, op.target));
    } else if (is_gate(op, kX)) {
      out.append(single("H", kH, op.target));
      out.append(mcz);
      out.append(single("H", kH, op.target));
    } else {
      fail(ErrorCode::kRewrite, "cannot lower '" + op.label + "' with " +
                                    std::to_string(op.controls.size()) +
                                    " controls");
    }
  }
  return out;
}

}  // namespace qvote
