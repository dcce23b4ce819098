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
#include <cstddef>
#include <vector>

#include "twolevel/hamiltonian.hpp"
#include "twolevel/quadrature.hpp"
#include "twolevel/time_function.hpp"

namespace twolevel {

/// Sampled parametrization (χ, Θ, φ) of the propagator together with the
/// derived angles φ̄ = φ − φ_ω(0), φ± = (Θ ± φ̄)/2 and the axis–angle pair
/// (Φ, n) with cos Φ = cos χ cos φ₊.
struct ParametrizationState {
  std::vector<double> grid;
  std::vector<double> chi;
  std::vector<double> Theta;
  std::vector<double> phi;
  std::vector<double> phibar;
  std::vector<double> phi_plus;
  std::vector<double> phi_minus;
  /// φ_ω sampled on the grid; the propagator needs φ_ω(t) and φ_ω(0).
  std::vector<double> phi_omega;
  std::vector<double> Phi;
  std::vector<std::array<double, 3>> n;

  std::size_t size() const noexcept { return grid.size(); }
  double phi_omega0() const { return phi_omega.front(); }
};

/// Fills in φ̄, φ±, Φ and n from the primary samples. All vectors must share
/// the grid's length.
ParametrizationState make_state(std::vector<double> grid, std::vector<double> chi, std::vector<double> Theta,
                                std::vector<double> phi, std::vector<double> phi_omega);

/// Inputs of the slow (x, y) reparametrization, x = tan χ, y = |ω| sin Θ / ħ.
/// x(0) = y(0) = 0 and ẋ(0) > 0 are required. x_ddot is optional; without it
/// Θ̇ falls back to a central difference of x_dot.
struct SlowParametrization {
  TimeFunction x;
  TimeFunction y;
  TimeFunction x_dot;
  TimeFunction y_dot;
  TimeFunction phi_omega;
  TimeFunction x_ddot;
};

/// A Hamiltonian whose exact propagator is known in closed form, plus the
/// sampled parametrization of that propagator.
struct ParametrizedSystem {
  HamiltonianTrajectory hamiltonian;
  ParametrizationState state;
};

struct ParametrizationOptions {
  quad::Options quadrature{};
  /// |sin 2χ| (resp. |x|) below which the integrands switch to their
  /// analytic limits at a joint zero.
  double singular_window = 1e-8;
  /// |sin Θ| (resp. |y|) must be below this for a zero of sin 2χ (resp. x)
  /// to count as removable.
  double removable_tol = 1e-4;
};

/// χ(t) = ∫₀ᵗ (|ω|/ħ) cos Θ. Requires grid[0] = 0 and Θ(0) = 0.
quad::CumulativeIntegral compute_chi(const HamiltonianTrajectory& h, const TimeFunction& Theta,
                                     std::vector<double> grid, const ParametrizationOptions& opts = {});

/// φ(t) = ∫₀ᵗ 2(|ω|/ħ) sin Θ / sin 2χ + φ_ω(0), sampled on chi's grid.
/// A joint zero of sin Θ and sin 2χ is removable (integrand → Θ̇ / cos 2χ);
/// a zero of sin 2χ at t* > 0 with sin Θ(t*) ≠ 0 throws NumericalError.
std::vector<double> compute_phi(const HamiltonianTrajectory& h, const TimeFunction& Theta,
                                const quad::CumulativeIntegral& chi, const ParametrizationOptions& opts = {});

/// Ω = (ħ/2)(Θ̇ − φ̇_ω) + |ω| sin Θ cot 2χ, as a function of time. The cot
/// term tends to ħΘ̇/2 at a joint zero; elsewhere a zero of sin 2χ throws.
TimeFunction synthesize_Omega(const TimeFunction& omega_abs, const TimeFunction& phi_omega,
                              const TimeFunction& Theta, const quad::CumulativeIntegral& chi, double hbar = 1.0,
                              const ParametrizationOptions& opts = {});

/// Direct route: given |ω|, φ_ω and a free Θ with Θ(0) = 0, synthesize Ω and
/// sample (χ, Θ, φ).
ParametrizedSystem direct_parametrization(const TimeFunction& omega_abs, const TimeFunction& phi_omega,
                                          const TimeFunction& Theta, std::vector<double> grid, double hbar = 1.0,
                                          const ParametrizationOptions& opts = {});

/// Slow route: |ω| = ħ√(y² + (ẋ/(1+x²))²), tan Θ = (1+x²) y / ẋ,
/// Ω = (ħ/2)(Θ̇ − φ̇_ω) + (ħy/2)(1/x − x), φ̇ = y(1/x + x).
ParametrizedSystem from_slow_params(const SlowParametrization& s, std::vector<double> grid, double hbar = 1.0,
                                    const ParametrizationOptions& opts = {});

/// Θ(t) = atan2(y(1+x²), ẋ) on the principal branch, with analytic Θ̇ when
/// x_ddot is available.
TimeFunction slow_Theta(const SlowParametrization& s);

/// Samples f on the grid.
std::vector<double> sample(const TimeFunction& f, const std::vector<double>& grid);

/// Makes an angle sequence continuous by adding multiples of `period`;
/// throws NumericalError if an adjacent step still exceeds `max_step`.
void unwrap_angles(std::vector<double>& angles, double period, double max_step, const std::vector<double>& grid);

}  // namespace twolevel
