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
#include <optional>
#include <span>
#include <vector>

#include "qvote/qstate/rng.hpp"
#include "qvote/qstate/state_vector.hpp"

namespace qvote::distributed {

/// A register of globally indexed qubits stored as a product of independent
/// StateVector blocks. Entangling gates merge the blocks they touch and
/// measurement splits the measured qubit back out, so memory follows the
/// largest entangled cluster rather than the total qubit count.
class FactoredRegister {
 public:
  /// Appends the qubits of `state` as one block; returns the global index of
  /// its first qubit. The rest follow contiguously.
  std::size_t allocate(const StateVector& state);

  /// Total qubits ever allocated.
  std::size_t size() const noexcept { return location_.size(); }
  /// Qubits in the largest block.
  std::size_t largest_block() const;
  /// Number of qubits sharing a block with `qubit`, itself included.
  std::size_t block_size(std::size_t qubit) const;

  void apply_single(const SingleQubitUnitary& gate, std::size_t qubit);
  void apply_controlled(std::span<const Control> controls, std::size_t target,
                        const SingleQubitUnitary& gate);

  double probability(std::size_t qubit, int outcome) const;
  /// Projective Z measurement. The qubit leaves its block afterwards.
  MeasurementRecord measure(std::size_t qubit, Rng& rng);
  /// Joint outcome distribution; the first listed qubit is the MSB.
  std::vector<double> marginal(std::span<const std::size_t> qubits) const;

  /// Exchanges the physical states behind two global indices.
  void swap(std::size_t a, std::size_t b);

  /// State of exactly the listed qubits, first listed as MSB. The qubits
  /// must form a union of whole blocks; throws kShape otherwise.
  StateVector snapshot(std::span<const std::size_t> qubits);

 private:
  struct Block {
    StateVector state;
    std::vector<std::size_t> qubits;  // local index -> global index
  };
  struct Location {
    std::size_t block = 0;
    std::size_t local = 0;
  };

  void check(std::size_t qubit) const;
  std::size_t merge(std::size_t a, std::size_t b);
  /// Merges every block touched by `qubits` into one and returns it.
  std::size_t gather(std::span<const std::size_t> qubits);
  std::size_t new_block(StateVector state, std::vector<std::size_t> qubits);

  std::vector<std::optional<Block>> blocks_;
  std::vector<std::size_t> free_blocks_;
  std::vector<Location> location_;
};

}  // namespace qvote::distributed
