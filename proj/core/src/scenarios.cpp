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

#include "twolevel/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <memory>
#include <numbers>

#include <fmt/format.h>

#include "twolevel/error.hpp"

namespace twolevel {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

double ScenarioSpec::alpha() const noexcept { return kPi / (2.0 * T); }

void ScenarioSpec::validate() const {
  if (!(nu0 > 0.0) || !(T > 0.0)) throw PreconditionError("scenario: nu0 > 0 and T > 0 required");
  if (samples < 2) throw PreconditionError("scenario: at least 2 samples required");
  if (!(hbar > 0.0)) throw PreconditionError("scenario: hbar > 0 required");
  if (!phi_omega) throw PreconditionError("scenario: phi_omega missing");
}

ScenarioSpec ScenarioSpec::from_nu0T(double nu0T, std::size_t samples, double nu0) {
  ScenarioSpec s;
  s.nu0 = nu0;
  s.T = nu0T / nu0;
  s.samples = samples;
  s.validate();
  return s;
}

SlowParametrization sine_slow_params(const ScenarioSpec& spec) {
  spec.validate();
  const double a = spec.alpha();
  const double nu0 = spec.nu0;
  SlowParametrization s;
  s.x = {[a](double t) { return std::sin(a * t); }, [a](double t) { return a * std::cos(a * t); }};
  s.x_dot = {[a](double t) { return a * std::cos(a * t); }, [a](double t) { return -a * a * std::sin(a * t); }};
  s.x_ddot = TimeFunction{[a](double t) { return -a * a * std::sin(a * t); }};
  s.y = {[a, nu0](double t) { return nu0 * std::sin(a * t); }, [a, nu0](double t) { return nu0 * a * std::cos(a * t); }};
  s.y_dot = TimeFunction{[a, nu0](double t) { return nu0 * a * std::cos(a * t); }};
  s.phi_omega = spec.phi_omega;
  return s;
}

double SineScenario::max_probability() const {
  return probability.empty() ? 0.0 : *std::max_element(probability.begin(), probability.end());
}

double SineScenario::max_amplitude() const { return std::sqrt(max_probability()); }

SineScenario sine_scenario(const ScenarioSpec& spec, const ParametrizationOptions& opts) {
  spec.validate();
  SineScenario out;
  out.spec = spec;
  out.system = from_slow_params(sine_slow_params(spec), quad::uniform_grid(0.0, spec.T, spec.samples), spec.hbar,
                                opts);
  const auto& grid = out.system.state.grid;
  const auto& h = out.system.hamiltonian;
  out.propagators = build_trajectory(out.system.state);
  const std::size_t n = grid.size();
  out.Omega.resize(n);
  out.omega_abs.resize(n);
  out.theta.resize(n);
  out.amplitude.resize(n);
  out.probability.resize(n);
  const Eigenframe f0 = eigenframe_at(h, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    out.Omega[i] = h.Omega(grid[i]);
    out.omega_abs[i] = h.omega_abs(grid[i]);
    const Eigenframe ft = eigenframe_from_fields(out.Omega[i], out.omega_abs[i], h.phi_omega(grid[i]), grid[i]);
    out.theta[i] = ft.theta;
    out.amplitude[i] = transition_amplitude_general(out.propagators[i], ft, f0, Level::plus, Level::minus);
    out.probability[i] = std::norm(out.amplitude[i]);
  }
  return out;
}

IntegratorConfig sine_oracle_config(const ScenarioSpec& spec) {
  IntegratorConfig cfg;
  cfg.step = transient_step_bound(spec.nu0, spec.alpha());
  cfg.tol = 1e-12;
  cfg.max_halvings = 24;
  return cfg;
}

// ---------------------------------------------------------------------------

namespace {

struct NoTransitionFields {
  double c = 0.0;
  double sin_phibar = 0.0;
  double phibar = 0.0;
  double Omega = 0.0;
  double omega_abs = 0.0;
};

class NoTransitionModel {
 public:
  explicit NoTransitionModel(NoTransitionSpec spec) : spec_(std::move(spec)) {
    if (!spec_.x || !spec_.theta || !spec_.phi_omega) {
      throw PreconditionError("no-transition: x, theta and phi_omega are required");
    }
    if (std::abs(std::sin(spec_.theta0)) < 1e-12) {
      throw SynthesisError("no-transition: theta0 = 0 is the exceptional case and is not synthesized", 0.0);
    }
    if (std::abs(std::cos(spec_.theta0)) < 1e-12) {
      throw SynthesisError("no-transition: theta0 = pi/2 leaves c undefined", 0.0);
    }
    tan0_ = std::tan(spec_.theta0);
    cos0_ = std::cos(spec_.theta0);
  }

  /// ½(cos θ/cos θ₀ − 1) without the cancellation of the naive form.
  double c(double t) const {
    const double th = spec_.theta(t);
    return -std::sin(0.5 * (th + spec_.theta0)) * std::sin(0.5 * (th - spec_.theta0)) / cos0_;
  }

  NoTransitionFields fields(double t) const {
    NoTransitionFields f;
    const double x = spec_.x(t);
    const double xd = spec_.x.derivative(t);
    f.c = c(t);
    if (xd < 0.0) throw SynthesisError(fmt::format("no-transition: x_dot < 0 at t={:.17g}", t), t);
    double c_over_x = 0.0;
    if (std::abs(x) < 1e-8) {
      const double h = fd_step(t);
      const double c_dot = (c(t + h) - c(t - h)) / (2.0 * h);
      c_over_x = xd > 0.0 ? c_dot / xd : 0.0;
    } else {
      c_over_x = f.c / x;
    }
    f.sin_phibar = x / tan0_ + c_over_x * (1.0 + x * x) / tan0_;
    if (!(std::abs(f.sin_phibar) < 1.0)) {
      throw SynthesisError(fmt::format("no-transition: |sin phibar| = {:.6g} >= 1 at t={:.17g}", f.sin_phibar, t), t);
    }
    f.phibar = std::asin(f.sin_phibar);
    const double cos_phibar = std::sqrt((1.0 - f.sin_phibar) * (1.0 + f.sin_phibar));
    if (cos_phibar < 1e-12) {
      throw SynthesisError(fmt::format("no-transition: cos phibar -> 0 at t={:.17g}; Omega diverges", t), t);
    }
    const double radicand = 1.0 - 4.0 * f.c * (1.0 + f.c) / (tan0_ * tan0_);
    if (radicand < 0.0) {
      throw SynthesisError(fmt::format("no-transition: negative radicand {:.6g} at t={:.17g}", radicand, t), t);
    }
    const double scale = spec_.hbar * xd / ((1.0 + x * x) * cos_phibar);
    f.Omega = scale * (1.0 + 2.0 * f.c) / tan0_;
    f.omega_abs = scale * std::sqrt(radicand);
    return f;
  }

  const NoTransitionSpec& spec() const noexcept { return spec_; }
  double tan0() const noexcept { return tan0_; }
  double cos0() const noexcept { return cos0_; }

 private:
  NoTransitionSpec spec_;
  double tan0_ = 0.0;
  double cos0_ = 1.0;
};

}  // namespace

NoTransitionSynthesis synthesize_no_transition(const NoTransitionSpec& spec, std::vector<double> grid,
                                               const quad::Options& quadrature) {
  quad::validate_grid(grid);
  if (grid.front() != 0.0) throw PreconditionError("no-transition: grid must start at t = 0");
  auto model = std::make_shared<const NoTransitionModel>(spec);
  if (std::abs(spec.x(0.0)) > 1e-12) throw PreconditionError("no-transition: x(0) = 0 required");
  if (std::abs(spec.theta(0.0) - spec.theta0) > 1e-12) throw PreconditionError("no-transition: theta(0) = theta0 required");

  NoTransitionSynthesis out;
  out.grid = grid;
  const std::size_t n = grid.size();
  out.c.resize(n);
  out.phibar.resize(n);
  std::vector<double> theta(n);
  for (std::size_t i = 0; i < n; ++i) {
    const NoTransitionFields f = model->fields(grid[i]);
    out.c[i] = f.c;
    out.phibar[i] = f.phibar;
    theta[i] = std::atan2(f.omega_abs, f.Omega);
  }

  HamiltonianTrajectory& h = out.hamiltonian;
  h.hbar = spec.hbar;
  h.t_begin = grid.front();
  h.t_end = grid.back();
  h.phi_omega = spec.phi_omega;
  h.Omega = TimeFunction{[model](double t) { return model->fields(t).Omega; }};
  h.omega_abs = TimeFunction{[model](double t) { return model->fields(t).omega_abs; }};

  const double hbar = spec.hbar;
  const quad::CumulativeIntegral zeta(
      [model, hbar](double t) {
        const NoTransitionFields f = model->fields(t);
        return std::hypot(f.Omega, f.omega_abs) / hbar;
      },
      grid, quadrature);
  out.zeta = zeta.samples();

  out.phibar_from_zeta.resize(n);
  const double t_post = 0.1 * grid.back();
  for (std::size_t i = 0; i < n; ++i) {
    const double z2 = 2.0 * out.zeta[i];
    double num = model->cos0() * (model->tan0() / std::tan(theta[i]) - std::cos(z2));
    double den = std::sin(z2);
    if (den < 0.0) {
      num = -num;
      den = -den;
    }
    out.phibar_from_zeta[i] = std::atan2(num, den);
    if (grid[i] >= t_post) {
      out.zeta_discrepancy = std::max(out.zeta_discrepancy, std::abs(out.phibar_from_zeta[i] - out.phibar[i]));
    }
  }
  return out;
}

NoTransitionReport verify_no_transition(const HamiltonianTrajectory& h, const std::vector<double>& grid,
                                        const IntegratorConfig& cfg) {
  const OracleResult run = integrate(h, grid, cfg);
  const std::vector<Complex> amps = transition_amplitudes(run.trajectory, h);
  NoTransitionReport r;
  r.grid = grid;
  r.unitarity_drift = run.unitarity_drift;
  r.amplitude_abs.resize(amps.size());
  for (std::size_t i = 0; i < amps.size(); ++i) {
    r.amplitude_abs[i] = std::abs(amps[i]);
    if (r.amplitude_abs[i] > r.max_amplitude) {
      r.max_amplitude = r.amplitude_abs[i];
      r.argmax_t = grid[i];
    }
  }
  return r;
}

double no_transition_horizon(double kappa) noexcept { return 1.4 / kappa; }

namespace {

TimeFunction sine_x(double X, double kappa) {
  return {[X, kappa](double t) { return X * std::sin(kappa * t); },
          [X, kappa](double t) { return X * kappa * std::cos(kappa * t); }};
}

}  // namespace

NoTransitionSpec trivial_no_transition_family(double theta0, double X, double kappa) {
  NoTransitionSpec s;
  s.x = sine_x(X, kappa);
  s.theta = TimeFunction::constant(theta0);
  s.theta0 = theta0;
  return s;
}

NoTransitionSpec rotating_no_transition_family(double theta0, double delta, double T, double X, double kappa) {
  NoTransitionSpec s;
  s.x = sine_x(X, kappa);
  s.theta = TimeFunction{[=](double t) {
                           const double r = std::sin(kappa * t);
                           return theta0 + delta * std::sin(kPi * t / (2.0 * T)) * r * r;
                         },
                         [=](double t) {
                           const double r = std::sin(kappa * t);
                           const double g = std::sin(kPi * t / (2.0 * T));
                           const double g_dot = kPi / (2.0 * T) * std::cos(kPi * t / (2.0 * T));
                           return delta * (g_dot * r * r + g * 2.0 * r * kappa * std::cos(kappa * t));
                         }};
  s.theta0 = theta0;
  return s;
}

NoTransitionSpec sin2_no_transition_family(double theta0, double delta, double T, double X, double kappa) {
  NoTransitionSpec s;
  s.x = sine_x(X, kappa);
  s.theta = TimeFunction{[=](double t) {
                           const double g = std::sin(kPi * t / (2.0 * T));
                           return theta0 + delta * g * g;
                         },
                         [=](double t) { return delta * kPi / (2.0 * T) * std::sin(kPi * t / T); }};
  s.theta0 = theta0;
  return s;
}

std::vector<LadderPoint> no_transition_ladder(double theta0, double delta, const std::vector<double>& Ts,
                                              std::size_t samples, double X, double kappa) {
  std::vector<std::future<LadderPoint>> jobs;
  jobs.reserve(Ts.size());
  for (double T : Ts) {
    jobs.push_back(std::async(std::launch::async, [=] {
      const NoTransitionSpec spec = rotating_no_transition_family(theta0, delta, T, X, kappa);
      const auto grid = quad::uniform_grid(0.0, no_transition_horizon(kappa), samples);
      const NoTransitionSynthesis syn = synthesize_no_transition(spec, grid);
      IntegratorConfig cfg;
      cfg.step = 1e-2;
      const NoTransitionReport rep = verify_no_transition(syn.hamiltonian, grid, cfg);
      return LadderPoint{T, rep.max_amplitude};
    }));
  }
  std::vector<LadderPoint> out;
  out.reserve(jobs.size());
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

}  // namespace twolevel
