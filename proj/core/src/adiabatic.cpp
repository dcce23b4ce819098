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

#include "twolevel/adiabatic.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "twolevel/error.hpp"

namespace twolevel {

namespace {

constexpr double kQuarterPi = std::numbers::pi / 4.0;

struct ApproxTerms {
  double first = 0.0;   // xẋ / (y(1+x²)²)
  double theta0 = 0.0;  // ẋ(0)² / ẏ(0)
  double phase = 0.0;   // x² φ̇_ω / (y(1+x²)²)
  double x_over = 0.0;  // x / (y(1+x²)²)
  double x = 0.0;
  double x_dot = 0.0;
  double phi_omega_dot = 0.0;
};

ApproxTerms approx_terms(const SlowParametrization& s, double t) {
  const double y = s.y(t);
  if (y == 0.0) throw PreconditionError(fmt::format("approx_amplitude: y = 0 at t={:.17g}", t));
  const double yd0 = s.y_dot(0.0);
  if (yd0 == 0.0) throw PreconditionError("approx_amplitude: y_dot(0) = 0 leaves the theta0 term undefined");
  ApproxTerms a;
  a.x = s.x(t);
  a.x_dot = s.x_dot(t);
  a.phi_omega_dot = s.phi_omega.derivative(t);
  const double q = 1.0 + a.x * a.x;
  a.x_over = a.x / (y * q * q);
  a.first = a.x_over * a.x_dot;
  const double xd0 = s.x_dot(0.0);
  a.theta0 = xd0 * xd0 / yd0;
  a.phase = a.x_over * a.x * a.phi_omega_dot;
  return a;
}

}  // namespace

double epsilon_at(const SlowParametrization& s, double t) {
  const double x = s.x(t);
  const double g = s.x_dot(t) / (1.0 + x * x);
  const double y = s.y(t);
  if (g == 0.0 && y == 0.0) throw PreconditionError(fmt::format("epsilon_at: undefined at t={:.17g}", t));
  return std::atan2(g, y);
}

Complex approx_amplitude(const SlowParametrization& s, double phibar, double t) {
  const ApproxTerms a = approx_terms(s, t);
  return a.first * std::polar(1.0, kQuarterPi - 0.5 * phibar) -
         0.5 * a.theta0 * std::polar(1.0, kQuarterPi + 0.5 * phibar) +
         a.phase * std::polar(1.0, -(kQuarterPi + 0.5 * phibar));
}

double approx_probability(const SlowParametrization& s, double phibar, double t) {
  const ApproxTerms a = approx_terms(s, t);
  const double half0 = 0.5 * a.theta0;
  return a.first * a.first + half0 * half0 + a.phase * a.phase +
         a.theta0 * a.x_over * (a.x * a.phi_omega_dot * std::sin(phibar) - a.x_dot * std::cos(phibar));
}

double tan_theta0_estimate(const SlowParametrization& s) {
  const double xd0 = s.x_dot(0.0);
  const double eps_dot0 = -s.y_dot(0.0) / xd0;
  return -xd0 / (eps_dot0 + 0.5 * s.phi_omega.derivative(0.0));
}

std::vector<AdiabaticEstimate> adiabatic_estimates(const SineScenario& scn) {
  const SlowParametrization s = sine_slow_params(scn.spec);
  const auto& st = scn.system.state;
  const auto& h = scn.system.hamiltonian;
  std::vector<AdiabaticEstimate> out(st.size());
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i < st.size(); ++i) {
    AdiabaticEstimate& e = out[i];
    e.t = st.grid[i];
    e.epsilon = epsilon_at(s, e.t);
    e.in_transient = e.epsilon > kTransientEpsilon;
    e.amp_exact = scn.amplitude[i];
    e.standard_criterion = h_dot_matrix_element(h, e.t);
    if (s.y(e.t) == 0.0) {
      e.amp_approx = {nan, nan};
      e.prob_approx = nan;
    } else {
      e.amp_approx = approx_amplitude(s, st.phibar[i], e.t);
      e.prob_approx = approx_probability(s, st.phibar[i], e.t);
    }
  }
  return out;
}

AdiabaticityDiagnostics adiabaticity_report(const SineScenario& scn) {
  AdiabaticityDiagnostics d;
  const ScenarioSpec& spec = scn.spec;
  d.nu0T = spec.nu0T();
  d.alpha_over_nu0 = spec.alpha() / spec.nu0;
  const auto& h = scn.system.hamiltonian;
  for (double t : scn.grid()) {
    d.max_phidot_omega_over_nu0 = std::max(d.max_phidot_omega_over_nu0, std::abs(spec.phi_omega.derivative(t)) / spec.nu0);
    d.max_standard_criterion = std::max(d.max_standard_criterion, h_dot_matrix_element(h, t));
  }
  d.max_transition_probability = scn.max_probability();
  d.max_amplitude = scn.max_amplitude();
  return d;
}

AdiabaticityDiagnostics adiabaticity_report(const ScenarioSpec& spec) {
  return adiabaticity_report(sine_scenario(spec));
}

std::vector<AdiabaticityDiagnostics> adiabaticity_sweep(const std::vector<double>& nu0T, std::size_t samples) {
  std::vector<std::future<AdiabaticityDiagnostics>> jobs;
  jobs.reserve(nu0T.size());
  for (double v : nu0T) {
    jobs.push_back(std::async(std::launch::async, [v, samples] {
      return adiabaticity_report(ScenarioSpec::from_nu0T(v, samples));
    }));
  }
  std::vector<AdiabaticityDiagnostics> out;
  out.reserve(jobs.size());
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

}  // namespace twolevel
