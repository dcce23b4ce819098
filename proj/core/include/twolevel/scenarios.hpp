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

#include <cstddef>
#include <vector>

#include "twolevel/evolution.hpp"
#include "twolevel/hamiltonian.hpp"
#include "twolevel/oracle.hpp"
#include "twolevel/parametrization.hpp"
#include "twolevel/time_function.hpp"

namespace twolevel {

// ---------------------------------------------------------------------------
// Sine family: x = sin αt, y = ν₀ sin αt on [0, T] with αT = π/2.
// ---------------------------------------------------------------------------

struct ScenarioSpec {
  double nu0 = 1.0;
  double T = 10.0;
  TimeFunction phi_omega = TimeFunction::constant(0.0);
  std::size_t samples = 4096;
  double hbar = 1.0;

  double alpha() const noexcept;
  double nu0T() const noexcept { return nu0 * T; }
  void validate() const;

  static ScenarioSpec from_nu0T(double nu0T, std::size_t samples = 4096, double nu0 = 1.0);
};

SlowParametrization sine_slow_params(const ScenarioSpec& spec);

/// Everything the sine scenario produces on its grid.
struct SineScenario {
  ScenarioSpec spec;
  ParametrizedSystem system;
  PropagatorTrajectory propagators;
  std::vector<double> Omega;
  std::vector<double> omega_abs;
  /// Mixing angle θ(t) of the instantaneous eigenframe.
  std::vector<double> theta;
  /// ⟨−|_t U(t) |+⟩₀ as an exact matrix element.
  std::vector<Complex> amplitude;
  std::vector<double> probability;

  const std::vector<double>& grid() const noexcept { return system.state.grid; }
  double max_probability() const;
  double max_amplitude() const;
};

SineScenario sine_scenario(const ScenarioSpec& spec, const ParametrizationOptions& opts = {});

/// Oracle settings resolving the sine scenario's initial transient.
IntegratorConfig sine_oracle_config(const ScenarioSpec& spec);

// ---------------------------------------------------------------------------
// No-transition Hamiltonians.
// ---------------------------------------------------------------------------

/// x(t) with x(0) = 0 and ẋ ≥ 0, a slowly varying mixing angle θ(t) with
/// θ(0) = θ₀, and φ_ω with φ̇_ω ≈ 0.
struct NoTransitionSpec {
  TimeFunction x;
  TimeFunction theta;
  double theta0 = 0.0;
  TimeFunction phi_omega = TimeFunction::constant(0.0);
  double hbar = 1.0;
};

struct NoTransitionSynthesis {
  HamiltonianTrajectory hamiltonian;
  std::vector<double> grid;
  std::vector<double> c;
  std::vector<double> phibar;
  /// ζ(t) = ∫₀ᵗ √(Ω² + |ω|²)/ħ.
  std::vector<double> zeta;
  /// φ̄ recovered from tan φ̄ = (cos θ₀ / sin 2ζ)(tan θ₀ / tan θ − cos 2ζ).
  std::vector<double> phibar_from_zeta;
  /// max |φ̄_ζ − φ̄| over t ≥ 0.1·t_end.
  double zeta_discrepancy = 0.0;
};

/// c = ½(cos θ / cos θ₀ − 1), sin φ̄ = (x / tan θ₀)(1 + c(1+x²)/x²),
/// Ω = ħẋ(1+2c) / ((1+x²) cos φ̄ tan θ₀),
/// |ω| = ħẋ √(1 − 4c(1+c)/tan²θ₀) / ((1+x²) cos φ̄).
/// Throws SynthesisError at the first grid time where |sin φ̄| ≥ 1, the radicand
/// is negative or ẋ < 0, and for θ₀ = 0.
NoTransitionSynthesis synthesize_no_transition(const NoTransitionSpec& spec, std::vector<double> grid,
                                               const quad::Options& quadrature = {});

struct NoTransitionReport {
  std::vector<double> grid;
  std::vector<double> amplitude_abs;
  double max_amplitude = 0.0;
  double argmax_t = 0.0;
  double unitarity_drift = 0.0;
};

/// Runs the oracle on `h` and measures |⟨−|_t U |+⟩₀| on the grid.
NoTransitionReport verify_no_transition(const HamiltonianTrajectory& h, const std::vector<double>& grid,
                                        const IntegratorConfig& cfg = {});

/// Horizon used by the built-in families: x = X sin κt on [0, 1.4/κ].
double no_transition_horizon(double kappa) noexcept;

/// θ ≡ θ₀: the static-eigenframe solution sin φ̄ = x / tan θ₀.
NoTransitionSpec trivial_no_transition_family(double theta0, double X = 0.6, double kappa = 1.0);

/// θ = θ₀ + Δ sin(πt/2T)·(x/X)²; θ̇ ∝ 1/T and c = O(x²) near t = 0.
NoTransitionSpec rotating_no_transition_family(double theta0, double delta, double T, double X = 0.6,
                                               double kappa = 1.0);

/// θ = θ₀ + Δ sin²(πt/2T).
NoTransitionSpec sin2_no_transition_family(double theta0, double delta, double T, double X = 0.6,
                                           double kappa = 1.0);

struct LadderPoint {
  double T = 0.0;
  double max_amplitude = 0.0;
};

/// Synthesizes and verifies rotating_no_transition_family for every T,
/// concurrently. Results are in the order of `Ts`.
std::vector<LadderPoint> no_transition_ladder(double theta0, double delta, const std::vector<double>& Ts,
                                              std::size_t samples = 400, double X = 0.6, double kappa = 1.0);

}  // namespace twolevel
