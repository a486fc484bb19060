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
#include <vector>

#include "qvote/qstate/state_vector.hpp"
#include "qvote/qstate/unitary.hpp"

namespace qvote {

enum class GateKind { kSingle, kControlled };

/// One primitive circuit operation: `gate` on `target`, conditioned on
/// every entry of `controls` (none for a plain single-qubit gate).
struct GateOp {
  std::string label;
  SingleQubitUnitary gate;
  std::vector<Control> controls;
  std::size_t target = 0;

  GateKind kind() const {
    return controls.empty() ? GateKind::kSingle : GateKind::kControlled;
  }
  /// Qubits touched, controls included.
  std::size_t arity() const { return controls.size() + 1; }
};

GateOp single(std::string label, const SingleQubitUnitary& gate,
              std::size_t target);
GateOp controlled(std::string label, const SingleQubitUnitary& gate,
                  std::vector<Control> controls, std::size_t target);

/// Gate tallies by the number of qubits each operation touches.
struct GateCounts {
  std::size_t one_qubit = 0;
  std::size_t two_qubit = 0;
  std::size_t three_qubit = 0;
  /// Logical operations on four or more qubits (not yet decomposed).
  std::size_t multi_qubit = 0;

  std::size_t total() const {
    return one_qubit + two_qubit + three_qubit + multi_qubit;
  }
  friend bool operator==(const GateCounts&, const GateCounts&) = default;
};

/// Ordered circuit; ops()[0] is applied first.
class GateSequence {
 public:
  explicit GateSequence(std::size_t num_qubits) : num_qubits_(num_qubits) {}

  std::size_t num_qubits() const noexcept { return num_qubits_; }
  std::size_t size() const noexcept { return ops_.size(); }
  bool empty() const noexcept { return ops_.empty(); }
  const std::vector<GateOp>& ops() const noexcept { return ops_; }
  const GateOp& operator[](std::size_t i) const { return ops_.at(i); }

  /// Throws kIndex when an index is out of range or repeated.
  void append(GateOp op);
  void append(const GateSequence& other);
  /// Replaces `count` ops starting at `position` with `replacement`.
  void splice(std::size_t position, std::size_t count,
              std::vector<GateOp> replacement);
  /// Grows the register; existing ops are unaffected.
  void widen(std::size_t num_qubits);

  GateCounts counts() const;

 private:
  void validate(const GateOp& op) const;

  std::size_t num_qubits_;
  std::vector<GateOp> ops_;
};

GateCounts gate_count_report(const GateSequence& sequence);

/// Evolves `state` through every op in order. The state must be at least as
/// wide as the sequence.
void apply_sequence(const GateSequence& sequence, StateVector& state);

/// Dense unitary of the sequence, row-major: entry (r, c) = <r|U|c>.
/// Limited to 10 qubits.
std::vector<Complex> composed_matrix(const GateSequence& sequence);

/// Text dump, one op per line:
/// `LABEL target=<i> controls=<(i,b),...> matrix=<(re,im),(re,im),(re,im),(re,im)>`
std::string dump_circuit(const GateSequence& sequence);

}  // namespace qvote
