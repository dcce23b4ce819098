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

#include "twolevel/linear.hpp"

#include <cmath>

#include "twolevel/error.hpp"

namespace twolevel {

bool Matrix2::finite() const noexcept {
  for (const Complex& z : {m00, m01, m10, m11}) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

Matrix2 operator+(const Matrix2& a, const Matrix2& b) noexcept {
  return {a.m00 + b.m00, a.m01 + b.m01, a.m10 + b.m10, a.m11 + b.m11, false};
}

Matrix2 operator-(const Matrix2& a, const Matrix2& b) noexcept {
  return {a.m00 - b.m00, a.m01 - b.m01, a.m10 - b.m10, a.m11 - b.m11, false};
}

Matrix2 operator*(Complex s, const Matrix2& a) noexcept {
  return {s * a.m00, s * a.m01, s * a.m10, s * a.m11, false};
}

Matrix2 operator-(const Matrix2& a) noexcept {
  return {-a.m00, -a.m01, -a.m10, -a.m11, a.unitary};
}

Spinor operator*(const Matrix2& m, const Spinor& v) noexcept {
  return {m.m00 * v.up + m.m01 * v.down, m.m10 * v.up + m.m11 * v.down};
}

Matrix2 mat_mul(const Matrix2& a, const Matrix2& b) noexcept {
  return {a.m00 * b.m00 + a.m01 * b.m10,
          a.m00 * b.m01 + a.m01 * b.m11,
          a.m10 * b.m00 + a.m11 * b.m10,
          a.m10 * b.m01 + a.m11 * b.m11,
          a.unitary && b.unitary};
}

Matrix2 adjoint(const Matrix2& a) noexcept {
  return {std::conj(a.m00), std::conj(a.m10), std::conj(a.m01), std::conj(a.m11), a.unitary};
}

double frob_norm(const Matrix2& a) noexcept {
  return std::sqrt(std::norm(a.m00) + std::norm(a.m01) + std::norm(a.m10) + std::norm(a.m11));
}

double frob_distance(const Matrix2& a, const Matrix2& b) noexcept { return frob_norm(a - b); }

double unitarity_defect(const Matrix2& u) noexcept {
  return frob_distance(mat_mul(adjoint(u), u), Matrix2::identity());
}

Matrix2 su2_rotation(double angle, const std::array<double, 3>& n) noexcept {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const Complex i{0.0, 1.0};
  // cos(a) I − i sin(a) (n_x σ_x + n_y σ_y + n_z σ_z)
  return {Complex{c, -s * n[2]},
          -i * s * Complex{n[0], -n[1]},
          -i * s * Complex{n[0], n[1]},
          Complex{c, s * n[2]},
          true};
}

Matrix2 z_phase(double angle) noexcept {
  return {std::polar(1.0, 0.5 * angle), 0.0, 0.0, std::polar(1.0, -0.5 * angle), true};
}

Complex inner(const Spinor& bra, const Spinor& ket) noexcept {
  return std::conj(bra.up) * ket.up + std::conj(bra.down) * ket.down;
}

Complex matrix_element(const Spinor& bra, const Matrix2& m, const Spinor& ket) {
  if (std::abs(bra.norm2() - 1.0) > 1e-8 || std::abs(ket.norm2() - 1.0) > 1e-8) {
    throw PreconditionError("matrix_element: bra/ket not normalized");
  }
  return inner(bra, m * ket);
}

}  // namespace twolevel
