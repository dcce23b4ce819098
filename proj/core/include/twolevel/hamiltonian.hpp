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

#include <limits>

#include "twolevel/linear.hpp"
#include "twolevel/time_function.hpp"

namespace twolevel {

/// H(t) = [[Ω, ω], [ω*, −Ω]] with ω = |ω| e^{iφ_ω}. Energies carry ħ; the
/// default ħ = 1 is used by every built-in scenario.
struct HamiltonianTrajectory {
  TimeFunction omega_abs;
  TimeFunction phi_omega;
  TimeFunction Omega;
  double hbar = 1.0;
  /// Domain over which the time functions are valid.
  double t_begin = -std::numeric_limits<double>::infinity();
  double t_end = std::numeric_limits<double>::infinity();

  Complex omega(double t) const;
  void require_in_domain(double t) const;
};

enum class Level { plus, minus };

/// Instantaneous eigenframe. θ = atan2(|ω|, Ω) ∈ [0, π];
/// |+⟩ = (e^{iφ_ω/2} cos θ/2, e^{−iφ_ω/2} sin θ/2),
/// |−⟩ = (e^{iφ_ω/2} sin θ/2, −e^{−iφ_ω/2} cos θ/2).
struct Eigenframe {
  double e_plus = 0.0;
  double e_minus = 0.0;
  double theta = 0.0;
  Spinor ket_plus;
  Spinor ket_minus;

  const Spinor& ket(Level l) const noexcept { return l == Level::plus ? ket_plus : ket_minus; }
};

/// Builds the eigenframe from raw field values. Throws DegeneracyError when
/// Ω = |ω| = 0.
Eigenframe eigenframe_from_fields(double Omega, double omega_abs, double phi_omega, double t = 0.0);

Eigenframe eigenframe_at(const HamiltonianTrajectory& h, double t);

Matrix2 hamiltonian_matrix(const HamiltonianTrajectory& h, double t);

/// dH/dt from the analytic derivatives, falling back to central differences.
Matrix2 hamiltonian_derivative(const HamiltonianTrajectory& h, double t);

/// Standard adiabaticity measure ħ|⟨−|Ḣ|+⟩_t| / (E₋ − E₊)².
double h_dot_matrix_element(const HamiltonianTrajectory& h, double t);

}  // namespace twolevel
