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

#include "qvote/compiler/gate_sequence.hpp"

#include <iomanip>
#include <sstream>
#include <unordered_set>

#include "qvote/errors.hpp"

namespace qvote {

GateOp single(std::string label, const SingleQubitUnitary& gate,
              std::size_t target) {
  return GateOp{std::move(label), gate, {}, target};
}

GateOp controlled(std::string label, const SingleQubitUnitary& gate,
                  std::vector<Control> controls, std::size_t target) {
  if (controls.empty()) {
    fail(ErrorCode::kIndex, "controlled op '" + label + "' has no controls");
  }
  return GateOp{std::move(label), gate, std::move(controls), target};
}

void GateSequence::validate(const GateOp& op) const {
  std::unordered_set<std::size_t> seen{op.target};
  if (op.target >= num_qubits_) {
    fail(ErrorCode::kIndex, op.label + ": target " + std::to_string(op.target) +
                                " >= " + std::to_string(num_qubits_));
  }
  for (const Control& c : op.controls) {
    if (c.qubit >= num_qubits_) {
      fail(ErrorCode::kIndex, op.label + ": control " +
                                  std::to_string(c.qubit) + " out of range");
    }
    if (!seen.insert(c.qubit).second) {
      fail(ErrorCode::kIndex,
           op.label + ": qubit " + std::to_string(c.qubit) + " repeated");
    }
  }
}

void GateSequence::append(GateOp op) {
  validate(op);
  ops_.push_back(std::move(op));
}

void GateSequence::append(const GateSequence& other) {
  for (const GateOp& op : other.ops_) append(op);
}

void GateSequence::splice(std::size_t position, std::size_t count,
                          std::vector<GateOp> replacement) {
  if (position + count > ops_.size()) {
    fail(ErrorCode::kIndex, "splice range past the end of the sequence");
  }
  for (const GateOp& op : replacement) validate(op);
  const auto first = ops_.begin() + static_cast<std::ptrdiff_t>(position);
  ops_.erase(first, first + static_cast<std::ptrdiff_t>(count));
  ops_.insert(ops_.begin() + static_cast<std::ptrdiff_t>(position),
              std::make_move_iterator(replacement.begin()),
              std::make_move_iterator(replacement.end()));
}

void GateSequence::widen(std::size_t num_qubits) {
  if (num_qubits > num_qubits_) num_qubits_ = num_qubits;
}

GateCounts GateSequence::counts() const {
  GateCounts c;
  for (const GateOp& op : ops_) {
    switch (op.arity()) {
      case 1: ++c.one_qubit; break;
      case 2: ++c.two_qubit; break;
      case 3: ++c.three_qubit; break;
      default: ++c.multi_qubit; break;
    }
  }
  return c;
}

GateCounts gate_count_report(const GateSequence& sequence) {
  return sequence.counts();
}

void apply_sequence(const GateSequence& sequence, StateVector& state) {
  if (state.num_qubits() < sequence.num_qubits()) {
    fail(ErrorCode::kShape, "state narrower than the sequence");
  }
  for (const GateOp& op : sequence.ops()) {
    state.apply_controlled({op.controls, op.target}, op.gate);
  }
}

std::vector<Complex> composed_matrix(const GateSequence& sequence) {
  const std::size_t q = sequence.num_qubits();
  if (q > 10) fail(ErrorCode::kCapacity, "dense matrix limited to 10 qubits");
  const std::size_t dim = std::size_t{1} << q;
  std::vector<Complex> matrix(dim * dim);
  for (std::size_t col = 0; col < dim; ++col) {
    StateVector column = StateVector::basis(q, col);
    apply_sequence(sequence, column);
    for (std::size_t row = 0; row < dim; ++row) {
      matrix[row * dim + col] = column.amplitude(row);
    }
  }
  return matrix;
}

std::string dump_circuit(const GateSequence& sequence) {
  std::ostringstream out;
  out << std::setprecision(17);
  for (const GateOp& op : sequence.ops()) {
    out << op.label << " target=" << op.target << " controls=";
    for (std::size_t i = 0; i < op.controls.size(); ++i) {
      if (i) out << ',';
      out << '(' << op.controls[i].qubit << ',' << (op.controls[i].value ? 1 : 0)
          << ')';
    }
    out << " matrix=";
    const Matrix2& m = op.gate.matrix();
    for (std::size_t i = 0; i < 4; ++i) {
      if (i) out << ',';
      // Normalize -0 so dumps are byte-stable.
      out << '(' << m[i].real() + 0.0 << ',' << m[i].imag() + 0.0 << ')';
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace qvote
