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

#include <array>
#include <complex>

namespace qvote {

using Complex = std::complex<double>;

/// Plain 2x2 complex matrix, row-major: {m00, m01, m10, m11}.
using Matrix2 = std::array<Complex, 4>;

Matrix2 multiply(const Matrix2& lhs, const Matrix2& rhs);
Matrix2 adjoint(const Matrix2& m);
Matrix2 scale(const Matrix2& m, Complex factor);
/// Largest entry-wise absolute difference.
double max_abs_diff(const Matrix2& lhs, const Matrix2& rhs);
/// Largest entry-wise deviation of m^dagger m from the identity.
double unitarity_deviation(const Matrix2& m);

/// A 2x2 matrix known to be unitary. Construction from raw entries checks
/// U^dagger U = I to within kUnitarityTolerance and throws kUnitarity
/// otherwise, so every gate that reaches a state vector is unitary.
class SingleQubitUnitary {
 public:
  static constexpr double kUnitarityTolerance = 1e-8;

  explicit SingleQubitUnitary(const Matrix2& entries);

  static SingleQubitUnitary identity();
  static SingleQubitUnitary pauli_x();
  static SingleQubitUnitary pauli_y();
  static SingleQubitUnitary pauli_z();
  static SingleQubitUnitary hadamard();
  /// diag(-1, 1): sign flip on |0>, the all-zero counterpart of Z.
  static SingleQubitUnitary zero_phase();
  /// diag(1, e^{i theta}).
  static SingleQubitUnitary phase(double theta);
  /// diag(e^{-i theta/2}, e^{i theta/2}).
  static SingleQubitUnitary rz(double theta);
  static SingleQubitUnitary ry(double theta);

  const Matrix2& matrix() const noexcept { return m_; }
  Complex operator()(int row, int col) const { return m_[row * 2 + col]; }

  SingleQubitUnitary adjoint() const;
  /// Matrix product; the result acts as `rhs` first, then `*this`.
  SingleQubitUnitary operator*(const SingleQubitUnitary& rhs) const;

  bool approx_equal(const SingleQubitUnitary& other, double tol) const {
    return max_abs_diff(m_, other.m_) <= tol;
  }
  bool is_diagonal(double tol = 1e-12) const {
    return std::abs(m_[1]) <= tol && std::abs(m_[2]) <= tol;
  }

 private:
  struct Unchecked {};
  SingleQubitUnitary(const Matrix2& entries, Unchecked) : m_(entries) {}

  Matrix2 m_;
};

}  // namespace qvote
