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
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qvote/qstate/rng.hpp"
#include "qvote/qstate/unitary.hpp"

namespace qvote {

inline constexpr std::size_t kMaxQubits = 24;
inline constexpr double kNormTolerance = 1e-10;
inline constexpr double kIdentityTolerance = 1e-12;
/// Outcomes whose probability falls below this are treated as empty.
inline constexpr double kZeroProbability = 1e-12;

/// A requirement that qubit `qubit` hold bit `value`.
struct Control {
  std::size_t qubit;
  bool value = true;

  friend bool operator==(const Control&, const Control&) = default;
};

struct ControlSpec {
  std::vector<Control> controls;
  std::size_t target = 0;
};

struct MeasurementRecord {
  std::size_t qubit;
  int outcome;
  double probability;
};

/// Formats `value` as a `width`-character bitstring, most significant first.
std::string to_bitstring(std::uint64_t value, std::size_t width);

/// Dense state vector over `num_qubits` qubits.
///
/// Qubit 0 is the most significant bit of a basis-state index, so index
/// 0b01 on two qubits is |01>: qubit 0 reads 0, qubit 1 reads 1. Every
/// mutating operation keeps the vector normalized except a failed
/// postselect, which throws before touching the amplitudes.
class StateVector {
 public:
  /// |0...0> on `num_qubits` qubits; 1 <= num_qubits <= kMaxQubits.
  static StateVector zero(std::size_t num_qubits);
  static StateVector basis(std::size_t num_qubits, std::uint64_t index);
  /// `values` divided by their Euclidean norm. Length must be a power of two.
  static StateVector from_amplitudes(std::span<const Complex> values);

  std::size_t num_qubits() const noexcept { return num_qubits_; }
  std::size_t dimension() const noexcept { return amplitudes_.size(); }
  std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
  Complex amplitude(std::uint64_t index) const { return amplitudes_.at(index); }
  /// Amplitude of the basis state spelled as a ket string, e.g. "0110".
  Complex amplitude(const std::string& bits) const;
  double norm() const;

  void apply_single(const SingleQubitUnitary& gate, std::size_t qubit);
  /// Applies `gate` to spec.target on exactly the basis states that satisfy
  /// every control in spec.controls.
  void apply_controlled(const ControlSpec& spec, const SingleQubitUnitary& gate);
  /// Negates amplitudes whose qubits [first, first + count) are all zero and
  /// whose controls are satisfied.
  void apply_zero_phase(std::span<const Control> controls, std::size_t first,
                        std::size_t count);

  /// Probability that measuring `qubit` yields `outcome`.
  double probability(std::size_t qubit, int outcome) const;
  MeasurementRecord measure(std::size_t qubit, Rng& rng);
  /// Projects onto `qubit` = `outcome`, renormalizes, and returns the
  /// pre-projection probability of that outcome. Throws kImpossibleOutcome
  /// below kZeroProbability and leaves the state untouched in that case.
  double postselect(std::size_t qubit, int outcome);
  /// Joint distribution of `qubits`, indexed by the bitstring they spell
  /// (first listed qubit is the most significant bit).
  std::vector<double> marginal(std::span<const std::size_t> qubits) const;

  /// Kronecker product: `*this` supplies the leading qubits.
  StateVector tensor(const StateVector& trailing) const;
  /// Drops `qubit`, which must be (numerically) in the definite state
  /// `value`. The remaining qubits keep their relative order.
  StateVector without_qubit(std::size_t qubit, int value) const;

  /// One line per amplitude with magnitude above kZeroProbability:
  /// `|bitstring> re imag`.
  std::string dump() const;

  /// Largest amplitude-wise distance to `other` (same width required).
  double distance(const StateVector& other) const;

 private:
  StateVector(std::size_t num_qubits, std::vector<Complex> amplitudes)
      : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {}

  std::uint64_t mask_of(std::size_t qubit) const {
    return std::uint64_t{1} << (num_qubits_ - 1 - qubit);
  }
  void check_qubit(std::size_t qubit) const;
  void check_controls(std::span<const Control> controls) const;

  std::size_t num_qubits_;
  std::vector<Complex> amplitudes_;
};

}  // namespace qvote
