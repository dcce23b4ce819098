// Copyright 2026 The twolevel Authors
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

namespace twolevel {

using Complex = std::complex<double>;

/// Two-component state vector.
struct Spinor {
  Complex up{};
  Complex down{};

  double norm2() const noexcept { return std::norm(up) + std::norm(down); }
};

inline constexpr Spinor kUp{Complex{1.0, 0.0}, Complex{0.0, 0.0}};
inline constexpr Spinor kDown{Complex{0.0, 0.0}, Complex{1.0, 0.0}};

/// 2×2 complex matrix. Propagators carry the `unitary` tag; Hamiltonians are
/// stored untagged.
struct Matrix2 {
  Complex m00{};
  Complex m01{};
  Complex m10{};
  Complex m11{};
  bool unitary = false;

  static Matrix2 identity() noexcept { return {1.0, 0.0, 0.0, 1.0, true}; }
  static Matrix2 zero() noexcept { return {}; }
  static Matrix2 sigma_x() noexcept { return {0.0, 1.0, 1.0, 0.0, true}; }
  static Matrix2 sigma_y() noexcept {
    return {0.0, Complex{0.0, -1.0}, Complex{0.0, 1.0}, 0.0, true};
  }
  static Matrix2 sigma_z() noexcept { return {1.0, 0.0, 0.0, -1.0, true}; }

  Complex det() const noexcept { return m00 * m11 - m01 * m10; }
  Complex trace() const noexcept { return m00 + m11; }
  bool finite() const noexcept;
};

Matrix2 operator+(const Matrix2& a, const Matrix2& b) noexcept;
Matrix2 operator-(const Matrix2& a, const Matrix2& b) noexcept;
Matrix2 operator*(Complex s, const Matrix2& a) noexcept;
Matrix2 operator-(const Matrix2& a) noexcept;
Spinor operator*(const Matrix2& m, const Spinor& v) noexcept;

/// Exact product; the unitary tag survives only when both factors carry it.
Matrix2 mat_mul(const Matrix2& a, const Matrix2& b) noexcept;
inline Matrix2 operator*(const Matrix2& a, const Matrix2& b) noexcept { return mat_mul(a, b); }

Matrix2 adjoint(const Matrix2& a) noexcept;

double frob_norm(const Matrix2& a) noexcept;
double frob_distance(const Matrix2& a, const Matrix2& b) noexcept;

/// ‖U†U − I‖_F.
double unitarity_defect(const Matrix2& u) noexcept;

/// exp(−i angle n·σ) for a unit vector n.
Matrix2 su2_rotation(double angle, const std::array<double, 3>& n) noexcept;

/// diag(e^{i angle/2}, e^{−i angle/2}) = exp((i/2) angle σ_z).
Matrix2 z_phase(double angle) noexcept;

/// ⟨bra| m |ket⟩. Throws PreconditionError when either spinor's norm² is
/// off by more than 1e-8.
Complex matrix_element(const Spinor& bra, const Matrix2& m, const Spinor& ket);

Complex inner(const Spinor& bra, const Spinor& ket) noexcept;

}  // namespace twolevel
