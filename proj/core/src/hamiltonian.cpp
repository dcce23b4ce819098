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

#include "twolevel/hamiltonian.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "twolevel/error.hpp"

namespace twolevel {

Complex HamiltonianTrajectory::omega(double t) const {
  return std::polar(omega_abs(t), phi_omega(t));
}

void HamiltonianTrajectory::require_in_domain(double t) const {
  const double scale = std::max(std::isfinite(t_begin) ? std::abs(t_begin) : 0.0,
                                std::isfinite(t_end) ? std::abs(t_end) : 0.0);
  const double slack = 1e-12 * std::max(1.0, scale);
  if (!(t >= t_begin - slack && t <= t_end + slack)) {
    throw PreconditionError(
        fmt::format("hamiltonian: t={:.17g} outside domain [{:.17g}, {:.17g}]", t, t_begin, t_end));
  }
}

Eigenframe eigenframe_from_fields(double Omega, double omega_abs, double phi_omega, double t) {
  const double e = std::hypot(Omega, omega_abs);
  if (!(e > 0.0)) {
    throw DegeneracyError(fmt::format("eigenframe: degenerate point Omega=|omega|=0 at t={:.17g}", t), t);
  }
  Eigenframe f;
  f.e_plus = e;
  f.e_minus = -e;
  f.theta = std::atan2(omega_abs, Omega);
  const double c = std::cos(0.5 * f.theta);
  const double s = std::sin(0.5 * f.theta);
  const Complex ph = std::polar(1.0, 0.5 * phi_omega);
  const Complex phc = std::conj(ph);
  f.ket_plus = {ph * c, phc * s};
  f.ket_minus = {ph * s, -phc * c};
  return f;
}

Eigenframe eigenframe_at(const HamiltonianTrajectory& h, double t) {
  h.require_in_domain(t);
  return eigenframe_from_fields(h.Omega(t), h.omega_abs(t), h.phi_omega(t), t);
}

Matrix2 hamiltonian_matrix(const HamiltonianTrajectory& h, double t) {
  h.require_in_domain(t);
  const double Om = h.Omega(t);
  const Complex w = h.omega(t);
  return {Om, w, std::conj(w), -Om, false};
}

Matrix2 hamiltonian_derivative(const HamiltonianTrajectory& h, double t) {
  h.require_in_domain(t);
  const double dOm = h.Omega.derivative(t);
  const double wabs = h.omega_abs(t);
  const double dwabs = h.omega_abs.derivative(t);
  const double dphi = h.phi_omega.derivative(t);
  const Complex dw = Complex{dwabs, wabs * dphi} * std::polar(1.0, h.phi_omega(t));
  return {dOm, dw, std::conj(dw), -dOm, false};
}

double h_dot_matrix_element(const HamiltonianTrajectory& h, double t) {
  const Eigenframe f = eigenframe_at(h, t);
  const Matrix2 hd = hamiltonian_derivative(h, t);
  const double gap = f.e_minus - f.e_plus;
  return h.hbar * std::abs(inner(f.ket_minus, hd * f.ket_plus)) / (gap * gap);
}

}  // namespace twolevel
