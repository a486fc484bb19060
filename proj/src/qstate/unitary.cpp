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

#include "qvote/qstate/unitary.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qvote/errors.hpp"

namespace qvote {

Matrix2 multiply(const Matrix2& a, const Matrix2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

Matrix2 adjoint(const Matrix2& m) {
  return {std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])};
}

Matrix2 scale(const Matrix2& m, Complex factor) {
  return {m[0] * factor, m[1] * factor, m[2] * factor, m[3] * factor};
}

double max_abs_diff(const Matrix2& lhs, const Matrix2& rhs) {
  double worst = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    worst = std::max(worst, std::abs(lhs[i] - rhs[i]));
  }
  return worst;
}

double unitarity_deviation(const Matrix2& m) {
  static const Matrix2 kIdentity{1.0, 0.0, 0.0, 1.0};
  return max_abs_diff(multiply(adjoint(m), m), kIdentity);
}

SingleQubitUnitary::SingleQubitUnitary(const Matrix2& entries) : m_(entries) {
  const double deviation = unitarity_deviation(entries);
  if (!(deviation <= kUnitarityTolerance)) {
    fail(ErrorCode::kUnitarity,
         "matrix deviates from unitarity by " + std::to_string(deviation));
  }
}

SingleQubitUnitary SingleQubitUnitary::identity() {
  return {{1.0, 0.0, 0.0, 1.0}, Unchecked{}};
}

SingleQubitUnitary SingleQubitUnitary::pauli_x() {
  return {{0.0, 1.0, 1.0, 0.0}, Unchecked{}};
}

SingleQubitUnitary SingleQubitUnitary::pauli_y() {
  return {{0.0, Complex(0, -1), Complex(0, 1), 0.0}, Unchecked{}};
}

SingleQubitUnitary SingleQubitUnitary::pauli_z() {
  return {{1.0, 0.0, 0.0, -1.0}, Unchecked{}};
}

SingleQubitUnitary SingleQubitUnitary::hadamard() {
  const double s = std::numbers::sqrt2 / 2.0;
  return {{s, s, s, -s}, Unchecked{}};
}

SingleQubitUnitary SingleQubitUnitary::zero_phase() {
  return {{-1.0, 0.0, 0.0, 1.0}, Unchecked{}};
}

SingleQubitUnitary SingleQubitUnitary::phase(double theta) {
  return {{1.0, 0.0, 0.0, std::polar(1.0, theta)}, Unchecked{}};
}

SingleQubitUnitary SingleQubitUnitary::rz(double theta) {
  return {{std::polar(1.0, -theta / 2), 0.0, 0.0, std::polar(1.0, theta / 2)},
          Unchecked{}};
}

SingleQubitUnitary SingleQubitUnitary::ry(double theta) {
  const double c = std::cos(theta / 2);
  const double s = std::sin(theta / 2);
  return {{c, -s, s, c}, Unchecked{}};
}

SingleQubitUnitary SingleQubitUnitary::adjoint() const {
  return {qvote::adjoint(m_), Unchecked{}};
}

SingleQubitUnitary SingleQubitUnitary::operator*(
    const SingleQubitUnitary& rhs) const {
  return {multiply(m_, rhs.m_), Unchecked{}};
}

}  // namespace qvote
