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

#include "qvote/qstate/state_vector.hpp"

#include <bit>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <unordered_set>

#include "qvote/errors.hpp"

namespace qvote {

namespace {

void check_width(std::size_t num_qubits) {
  if (num_qubits < 1 || num_qubits > kMaxQubits) {
    fail(ErrorCode::kCapacity, "qubit count " + std::to_string(num_qubits) +
                                   " outside [1, " + std::to_string(kMaxQubits) +
                                   "]");
  }
}

struct ControlMask {
  std::uint64_t mask = 0;
  std::uint64_t value = 0;

  bool matches(std::uint64_t index) const { return (index & mask) == value; }
};

}  // namespace

std::string to_bitstring(std::uint64_t value, std::size_t width) {
  std::string bits(width, '0');
  for (std::size_t i = 0; i < width; ++i) {
    if ((value >> (width - 1 - i)) & 1U) bits[i] = '1';
  }
  return bits;
}

StateVector StateVector::zero(std::size_t num_qubits) {
  return basis(num_qubits, 0);
}

StateVector StateVector::basis(std::size_t num_qubits, std::uint64_t index) {
  check_width(num_qubits);
  std::vector<Complex> amps(std::size_t{1} << num_qubits);
  if (index >= amps.size()) {
    fail(ErrorCode::kIndex, "basis index out of range");
  }
  amps[index] = 1.0;
  return {num_qubits, std::move(amps)};
}

StateVector StateVector::from_amplitudes(std::span<const Complex> values) {
  const std::size_t n = values.size();
  if (n < 2 || !std::has_single_bit(n)) {
    fail(ErrorCode::kShape, "amplitude count " + std::to_string(n) +
                                " is not a power of two >= 2");
  }
  const auto num_qubits = static_cast<std::size_t>(std::countr_zero(n));
  check_width(num_qubits);
  double norm_sq = 0.0;
  for (const Complex& v : values) norm_sq += std::norm(v);
  if (!(norm_sq > 0.0) || !std::isfinite(norm_sq)) {
    fail(ErrorCode::kNormalization, "cannot normalize a zero vector");
  }
  const double inv = 1.0 / std::sqrt(norm_sq);
  std::vector<Complex> amps(values.begin(), values.end());
  for (Complex& a : amps) a *= inv;
  return {num_qubits, std::move(amps)};
}

Complex StateVector::amplitude(const std::string& bits) const {
  if (bits.size() != num_qubits_) {
    fail(ErrorCode::kShape, "ket '" + bits + "' has the wrong width");
  }
  std::uint64_t index = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') fail(ErrorCode::kShape, "bad ket '" + bits + "'");
    index = (index << 1) | static_cast<std::uint64_t>(c == '1');
  }
  return amplitudes_[index];
}

double StateVector::norm() const {
  double sum = 0.0;
  for (const Complex& a : amplitudes_) sum += std::norm(a);
  return std::sqrt(sum);
}

void StateVector::check_qubit(std::size_t qubit) const {
  if (qubit >= num_qubits_) {
    fail(ErrorCode::kIndex, "qubit " + std::to_string(qubit) +
                                " out of range for " +
                                std::to_string(num_qubits_) + " qubits");
  }
}

void StateVector::check_controls(std::span<const Control> controls) const {
  std::unordered_set<std::size_t> seen;
  for (const Control& c : controls) {
    check_qubit(c.qubit);
    if (!seen.insert(c.qubit).second) {
      fail(ErrorCode::kIndex,
           "qubit " + std::to_string(c.qubit) + " listed twice as a control");
    }
  }
}

void StateVector::apply_single(const SingleQubitUnitary& gate,
                               std::size_t qubit) {
  apply_controlled({.controls = {}, .target = qubit}, gate);
}

void StateVector::apply_controlled(const ControlSpec& spec,
                                   const SingleQubitUnitary& gate) {
  check_qubit(spec.target);
  check_controls(spec.controls);
  ControlMask ctrl;
  for (const Control& c : spec.controls) {
    if (c.qubit == spec.target) {
      fail(ErrorCode::kIndex, "control and target share qubit " +
                                  std::to_string(c.qubit));
    }
    ctrl.mask |= mask_of(c.qubit);
    if (c.value) ctrl.value |= mask_of(c.qubit);
  }
  const std::uint64_t target = mask_of(spec.target);
  const Complex m00 = gate(0, 0), m01 = gate(0, 1);
  const Complex m10 = gate(1, 0), m11 = gate(1, 1);
  for (std::uint64_t i = 0; i < amplitudes_.size(); ++i) {
    if ((i & target) || !ctrl.matches(i)) continue;
    const std::uint64_t j = i | target;
    const Complex a0 = amplitudes_[i];
    const Complex a1 = amplitudes_[j];
    amplitudes_[i] = m00 * a0 + m01 * a1;
    amplitudes_[j] = m10 * a0 + m11 * a1;
  }
}

void StateVector::apply_zero_phase(std::span<const Control> controls,
                                   std::size_t first, std::size_t count) {
  if (count == 0) fail(ErrorCode::kShape, "empty subregister");
  if (first + count > num_qubits_) {
    fail(ErrorCode::kIndex, "subregister exceeds the state");
  }
  check_controls(controls);
  ControlMask ctrl;
  for (const Control& c : controls) {
    if (c.qubit >= first && c.qubit < first + count) {
      fail(ErrorCode::kIndex, "control inside the phased subregister");
    }
    ctrl.mask |= mask_of(c.qubit);
    if (c.value) ctrl.value |= mask_of(c.qubit);
  }
  for (std::size_t q = first; q < first + count; ++q) ctrl.mask |= mask_of(q);
  for (std::uint64_t i = 0; i < amplitudes_.size(); ++i) {
    if (ctrl.matches(i)) amplitudes_[i] = -amplitudes_[i];
  }
}

double StateVector::probability(std::size_t qubit, int outcome) const {
  check_qubit(qubit);
  const std::uint64_t mask = mask_of(qubit);
  const std::uint64_t want = outcome ? mask : 0;
  double p = 0.0;
  for (std::uint64_t i = 0; i < amplitudes_.size(); ++i) {
    if ((i & mask) == want) p += std::norm(amplitudes_[i]);
  }
  return p;
}

MeasurementRecord StateVector::measure(std::size_t qubit, Rng& rng) {
  const double p1 = probability(qubit, 1);
  const int outcome = rng.uniform() < p1 ? 1 : 0;
  const double p = outcome ? p1 : 1.0 - p1;
  postselect(qubit, outcome);
  return {qubit, outcome, p};
}

double StateVector::postselect(std::size_t qubit, int outcome) {
  const double p = probability(qubit, outcome);
  if (p < kZeroProbability) {
    fail(ErrorCode::kImpossibleOutcome,
         "outcome " + std::to_string(outcome) + " on qubit " +
             std::to_string(qubit) + " has probability " + std::to_string(p));
  }
  const std::uint64_t mask = mask_of(qubit);
  const std::uint64_t keep = outcome ? mask : 0;
  const double inv = 1.0 / std::sqrt(p);
  for (std::uint64_t i = 0; i < amplitudes_.size(); ++i) {
    if ((i & mask) == keep) {
      amplitudes_[i] *= inv;
    } else {
      amplitudes_[i] = 0.0;
    }
  }
  return p;
}

std::vector<double> StateVector::marginal(
    std::span<const std::size_t> qubits) const {
  std::unordered_set<std::size_t> seen;
  for (std::size_t q : qubits) {
    check_qubit(q);
    if (!seen.insert(q).second) {
      fail(ErrorCode::kIndex, "qubit " + std::to_string(q) + " listed twice");
    }
  }
  std::vector<double> dist(std::size_t{1} << qubits.size(), 0.0);
  for (std::uint64_t i = 0; i < amplitudes_.size(); ++i) {
    const double p = std::norm(amplitudes_[i]);
    if (p == 0.0) continue;
    std::uint64_t key = 0;
    for (std::size_t q : qubits) {
      key = (key << 1) | static_cast<std::uint64_t>((i & mask_of(q)) != 0);
    }
    dist[key] += p;
  }
  return dist;
}

StateVector StateVector::tensor(const StateVector& trailing) const {
  const std::size_t width = num_qubits_ + trailing.num_qubits_;
  check_width(width);
  std::vector<Complex> amps;
  amps.reserve(std::size_t{1} << width);
  for (const Complex& a : amplitudes_) {
    for (const Complex& b : trailing.amplitudes_) amps.push_back(a * b);
  }
  return {width, std::move(amps)};
}

StateVector StateVector::without_qubit(std::size_t qubit, int value) const {
  check_qubit(qubit);
  if (num_qubits_ == 1) fail(ErrorCode::kShape, "cannot drop the last qubit");
  if (probability(qubit, value) < 1.0 - kNormTolerance) {
    fail(ErrorCode::kShape, "qubit " + std::to_string(qubit) +
                                " is not in a definite state");
  }
  const std::size_t low_bits = num_qubits_ - 1 - qubit;
  const std::uint64_t low_mask = (std::uint64_t{1} << low_bits) - 1;
  std::vector<Complex> amps(amplitudes_.size() / 2);
  for (std::uint64_t k = 0; k < amps.size(); ++k) {
    const std::uint64_t high = (k & ~low_mask) << 1;
    const std::uint64_t index =
        high | (static_cast<std::uint64_t>(value) << low_bits) | (k & low_mask);
    amps[k] = amplitudes_[index];
  }
  StateVector out(num_qubits_ - 1, std::move(amps));
  // Re-normalize away the rounding left in the discarded branch.
  const double n = out.norm();
  for (Complex& a : out.amplitudes_) a /= n;
  return out;
}

std::string StateVector::dump() const {
  std::ostringstream out;
  out << std::setprecision(17);
  for (std::uint64_t i = 0; i < amplitudes_.size(); ++i) {
    if (std::abs(amplitudes_[i]) <= kZeroProbability) continue;
    out << '|' << to_bitstring(i, num_qubits_) << "⟩ "
        << amplitudes_[i].real() << ' ' << amplitudes_[i].imag() << '\n';
  }
  return out.str();
}

double StateVector::distance(const StateVector& other) const {
  if (other.num_qubits_ != num_qubits_) {
    fail(ErrorCode::kShape, "states have different widths");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
    worst = std::max(worst, std::abs(amplitudes_[i] - other.amplitudes_[i]));
  }
  return worst;
}

}  // namespace qvote
