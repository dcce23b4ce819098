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

#include <vector>

#include "twolevel/linear.hpp"
#include "twolevel/parametrization.hpp"
#include "twolevel/scenarios.hpp"

namespace twolevel {

/// ε above which a sample counts as part of the initial transient.
inline constexpr double kTransientEpsilon = 0.1;

struct AdiabaticEstimate {
  double t = 0.0;
  double epsilon = 0.0;
  Complex amp_approx;
  double prob_approx = 0.0;
  Complex amp_exact;
  double standard_criterion = 0.0;
  bool in_transient = true;
};

/// ε = atan2(ẋ/(1+x²), y) = π/2 − Θ.
double epsilon_at(const SlowParametrization& s, double t);

/// Leading-order ⟨−|_t U |+⟩₀ for small ε. ε̇ terms are dropped.
///   (xẋ / (y(1+x²)²)) e^{i(π/4 − φ̄/2)} − (ẋ(0)² / 2ẏ(0)) e^{i(π/4 + φ̄/2)}
///   + (x² φ̇_ω / (y(1+x²)²)) e^{−i(π/4 + φ̄/2)}
/// Throws PreconditionError when y(t) = 0 or ẏ(0) = 0.
Complex approx_amplitude(const SlowParametrization& s, double phibar, double t);

/// Squared magnitudes of the three terms plus the cross term
/// (ẋ(0)²/ẏ(0))·(x / (y(1+x²)²))·(x φ̇_ω sin φ̄ − ẋ cos φ̄).
double approx_probability(const SlowParametrization& s, double phibar, double t);

/// −ẋ(0) / (ε̇(0) + ½φ̇_ω(0)) with ε̇(0) ≈ −ẏ(0)/ẋ(0).
double tan_theta0_estimate(const SlowParametrization& s);

/// Per-sample estimates for a computed sine scenario. amp_approx / prob_approx
/// are NaN at t = 0 where y = 0.
std::vector<AdiabaticEstimate> adiabatic_estimates(const SineScenario& scn);

struct AdiabaticityDiagnostics {
  double nu0T = 0.0;
  double alpha_over_nu0 = 0.0;
  double max_phidot_omega_over_nu0 = 0.0;
  double max_standard_criterion = 0.0;
  double max_transition_probability = 0.0;
  double max_amplitude = 0.0;
};

AdiabaticityDiagnostics adiabaticity_report(const ScenarioSpec& spec);
AdiabaticityDiagnostics adiabaticity_report(const SineScenario& scn);

/// Runs adiabaticity_report on each ν₀T concurrently.
std::vector<AdiabaticityDiagnostics> adiabaticity_sweep(const std::vector<double>& nu0T, std::size_t samples = 4096);

}  // namespace twolevel
