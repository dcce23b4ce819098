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

#include "twolevel/parametrization.hpp"

#include <cmath>
#include <memory>
#include <numbers>

#include <fmt/format.h>

#include "twolevel/error.hpp"

namespace twolevel {

namespace {

constexpr double kPi = std::numbers::pi;

void require_same_size(std::size_t n, std::size_t m, const char* what) {
  if (n != m) throw PreconditionError(fmt::format("parametrization: {} has {} samples, grid has {}", what, m, n));
}

void require_zero_start(const std::vector<double>& grid) {
  quad::validate_grid(grid);
  if (grid.front() != 0.0) throw PreconditionError("parametrization: grid must start at t = 0");
}

/// Locates a sign change of g on [a, b] by bisection.
template <class G>
double bisect_root(const G& g, double a, double b) {
  double ga = g(a);
  for (int k = 0; k < 200 && b - a > 1e-15 * std::max(1.0, std::abs(b)); ++k) {
    const double m = 0.5 * (a + b);
    const double gm = g(m);
    if ((gm < 0) == (ga < 0)) {
      a = m;
      ga = gm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

std::vector<double> sample(const TimeFunction& f, const std::vector<double>& grid) {
  std::vector<double> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) out[i] = f(grid[i]);
  return out;
}

void unwrap_angles(std::vector<double>& angles, double period, double max_step, const std::vector<double>& grid) {
  double offset = 0.0;
  for (std::size_t i = 1; i < angles.size(); ++i) {
    const double prev = angles[i - 1];
    double cur = angles[i] + offset;
    const double shift = period * std::round((prev - cur) / period);
    cur += shift;
    offset += shift;
    if (std::abs(cur - prev) >= max_step) {
      throw NumericalError(
          fmt::format("unwrap: angle jumps by {:.6g} rad between t={:.17g} and t={:.17g}; grid too coarse",
                      cur - prev, grid[i - 1], grid[i]),
          grid[i - 1], grid[i]);
    }
    angles[i] = cur;
  }
}

ParametrizationState make_state(std::vector<double> grid, std::vector<double> chi, std::vector<double> Theta,
                                std::vector<double> phi, std::vector<double> phi_omega) {
  quad::validate_grid(grid);
  const std::size_t n = grid.size();
  require_same_size(n, chi.size(), "chi");
  require_same_size(n, Theta.size(), "Theta");
  require_same_size(n, phi.size(), "phi");
  require_same_size(n, phi_omega.size(), "phi_omega");

  ParametrizationState s;
  s.grid = std::move(grid);
  s.chi = std::move(chi);
  s.Theta = std::move(Theta);
  s.phi = std::move(phi);
  s.phi_omega = std::move(phi_omega);
  s.phibar.resize(n);
  s.phi_plus.resize(n);
  s.phi_minus.resize(n);
  s.Phi.resize(n);
  s.n.resize(n);
  const double phi_omega0 = s.phi_omega.front();
  for (std::size_t i = 0; i < n; ++i) {
    s.phibar[i] = s.phi[i] - phi_omega0;
    s.phi_plus[i] = 0.5 * (s.Theta[i] + s.phibar[i]);
    s.phi_minus[i] = 0.5 * (s.Theta[i] - s.phibar[i]);
    const double cc = std::cos(s.chi[i]);
    const double sc = std::sin(s.chi[i]);
    const std::array<double, 3> v{sc * std::cos(s.phi_minus[i]), sc * std::sin(s.phi_minus[i]),
                                  cc * std::sin(s.phi_plus[i])};
    const double sin_Phi = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    s.Phi[i] = std::atan2(sin_Phi, cc * std::cos(s.phi_plus[i]));
    // n is undefined where sin Φ = 0 (U = ±I); the z axis stands in.
    s.n[i] = sin_Phi > 0.0 ? std::array<double, 3>{v[0] / sin_Phi, v[1] / sin_Phi, v[2] / sin_Phi}
                           : std::array<double, 3>{0.0, 0.0, 1.0};
  }
  return s;
}

quad::CumulativeIntegral compute_chi(const HamiltonianTrajectory& h, const TimeFunction& Theta,
                                     std::vector<double> grid, const ParametrizationOptions& opts) {
  require_zero_start(grid);
  const double hbar = h.hbar;
  auto omega_abs = h.omega_abs;
  auto integrand = [omega_abs, Theta, hbar](double t) { return omega_abs(t) / hbar * std::cos(Theta(t)); };
  return quad::CumulativeIntegral(integrand, std::move(grid), opts.quadrature);
}

std::vector<double> compute_phi(const HamiltonianTrajectory& h, const TimeFunction& Theta,
                                const quad::CumulativeIntegral& chi, const ParametrizationOptions& opts) {
  const auto& grid = chi.grid();
  const auto& chis = chi.samples();
  require_zero_start(grid);

  // A zero of sin 2χ inside an interval is only allowed where sin Θ vanishes too.
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double a = std::sin(2.0 * chis[i - 1]);
    const double b = std::sin(2.0 * chis[i]);
    const bool crossing = (a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0) || (i > 1 && a == 0.0);
    if (!crossing) continue;
    const double t_star =
        a == 0.0 ? grid[i - 1] : bisect_root([&](double t) { return std::sin(2.0 * chi(t)); }, grid[i - 1], grid[i]);
    if (std::abs(std::sin(Theta(t_star))) > opts.removable_tol) {
      throw NumericalError(
          fmt::format("compute_phi: non-removable singularity, sin 2chi = 0 at t*={:.17g} with sin Theta={:.6g}",
                      t_star, std::sin(Theta(t_star))),
          t_star, t_star);
    }
  }

  const double hbar = h.hbar;
  auto omega_abs = h.omega_abs;
  const double window = opts.singular_window;
  const double removable = opts.removable_tol;
  auto integrand = [&chi, omega_abs, Theta, hbar, window, removable](double t) {
    const double c = chi(t);
    const double s2 = std::sin(2.0 * c);
    const double sT = std::sin(Theta(t));
    if (std::abs(s2) < window) {
      if (std::abs(sT) > removable) {
        throw NumericalError(fmt::format("compute_phi: non-removable singularity at t*={:.17g}", t), t, t);
      }
      return Theta.derivative(t) / std::cos(2.0 * c);
    }
    return 2.0 * omega_abs(t) / hbar * sT / s2;
  };
  const quad::CumulativeIntegral phi(integrand, grid, opts.quadrature);
  const double phi_omega0 = h.phi_omega(0.0);
  std::vector<double> out = phi.samples();
  for (double& v : out) v += phi_omega0;
  return out;
}

TimeFunction synthesize_Omega(const TimeFunction& omega_abs, const TimeFunction& phi_omega,
                              const TimeFunction& Theta, const quad::CumulativeIntegral& chi, double hbar,
                              const ParametrizationOptions& opts) {
  auto chi_ptr = std::make_shared<const quad::CumulativeIntegral>(chi);
  const double window = opts.singular_window;
  const double removable = opts.removable_tol;
  return TimeFunction{[=](double t) {
    const double theta_dot = Theta.derivative(t);
    const double c = (*chi_ptr)(t);
    const double s2 = std::sin(2.0 * c);
    const double sT = std::sin(Theta(t));
    double cot_term = 0.0;
    if (std::abs(s2) < window) {
      if (std::abs(sT) > removable) {
        throw NumericalError(fmt::format("synthesize_Omega: Omega diverges at t*={:.17g} (cot 2chi)", t), t, t);
      }
      cot_term = 0.5 * hbar * theta_dot;
    } else {
      cot_term = omega_abs(t) * sT * std::cos(2.0 * c) / s2;
    }
    return 0.5 * hbar * (theta_dot - phi_omega.derivative(t)) + cot_term;
  }};
}

ParametrizedSystem direct_parametrization(const TimeFunction& omega_abs, const TimeFunction& phi_omega,
                                          const TimeFunction& Theta, std::vector<double> grid, double hbar,
                                          const ParametrizationOptions& opts) {
  if (std::abs(Theta(0.0)) > 1e-12) throw PreconditionError("direct_parametrization: Theta(0) must be 0");
  HamiltonianTrajectory h;
  h.omega_abs = omega_abs;
  h.phi_omega = phi_omega;
  h.hbar = hbar;
  h.t_begin = grid.front();
  h.t_end = grid.back();
  const quad::CumulativeIntegral chi = compute_chi(h, Theta, grid, opts);
  std::vector<double> phi = compute_phi(h, Theta, chi, opts);
  h.Omega = synthesize_Omega(omega_abs, phi_omega, Theta, chi, hbar, opts);
  ParametrizedSystem sys;
  sys.state = make_state(grid, chi.samples(), sample(Theta, grid), std::move(phi), sample(phi_omega, grid));
  sys.hamiltonian = std::move(h);
  return sys;
}

TimeFunction slow_Theta(const SlowParametrization& s) {
  auto value = [s](double t) {
    const double x = s.x(t);
    return std::atan2(s.y(t) * (1.0 + x * x), s.x_dot(t));
  };
  auto derivative = [s](double t) {
    const double x = s.x(t);
    const double y = s.y(t);
    const double xd = s.x_dot(t);
    const double num = y * (1.0 + x * x);
    const double num_dot = s.y_dot(t) * (1.0 + x * x) + 2.0 * y * x * xd;
    const double den_dot = s.x_ddot ? s.x_ddot(t) : s.x_dot.derivative(t);
    const double r2 = num * num + xd * xd;
    if (!(r2 > 0.0)) throw DegeneracyError(fmt::format("slow_Theta: |omega| = 0 at t={:.17g}", t), t);
    return (num_dot * xd - num * den_dot) / r2;
  };
  return {value, derivative};
}

ParametrizedSystem from_slow_params(const SlowParametrization& s, std::vector<double> grid, double hbar,
                                    const ParametrizationOptions& opts) {
  require_zero_start(grid);
  if (!s.x || !s.y || !s.x_dot || !s.y_dot || !s.phi_omega) {
    throw PreconditionError("from_slow_params: x, y, x_dot, y_dot and phi_omega are required");
  }
  if (std::abs(s.x(0.0)) > 1e-12 || std::abs(s.y(0.0)) > 1e-12) {
    throw PreconditionError("from_slow_params: x(0) = y(0) = 0 required");
  }
  if (!(s.x_dot(0.0) > 0.0)) throw PreconditionError("from_slow_params: x_dot(0) > 0 required so that Theta(0) = 0");

  const double window = opts.singular_window;
  const double removable = opts.removable_tol;

  // y/x with the joint zero at x = 0 resolved as ẏ/ẋ.
  auto y_over_x = [s, window, removable](double t) {
    const double x = s.x(t);
    const double y = s.y(t);
    if (std::abs(x) < window) {
      if (std::abs(y) > removable) {
        throw NumericalError(fmt::format("from_slow_params: x = 0 with y != 0 at t={:.17g}; phi_dot diverges", t), t,
                             t);
      }
      return s.y_dot(t) / s.x_dot(t);
    }
    return y / x;
  };

  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double a = s.x(grid[i - 1]);
    const double b = s.x(grid[i]);
    if ((a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0) || (i > 1 && a == 0.0)) {
      const double t_star = a == 0.0 ? grid[i - 1] : bisect_root(s.x, grid[i - 1], grid[i]);
      if (std::abs(s.x(t_star)) < 1e-6 && std::abs(s.y(t_star)) > removable) {
        throw NumericalError(
            fmt::format("from_slow_params: x = 0 with y != 0 at interior t*={:.17g}; phi_dot diverges", t_star),
            t_star, t_star);
      }
    }
  }

  const TimeFunction Theta = slow_Theta(s);

  HamiltonianTrajectory h;
  h.hbar = hbar;
  h.t_begin = grid.front();
  h.t_end = grid.back();
  h.phi_omega = s.phi_omega;
  h.omega_abs = TimeFunction{[s, hbar](double t) {
                               const double x = s.x(t);
                               const double g = s.x_dot(t) / (1.0 + x * x);
                               return hbar * std::hypot(s.y(t), g);
                             },
                             [s, hbar](double t) {
                               const double x = s.x(t);
                               const double xd = s.x_dot(t);
                               const double q = 1.0 + x * x;
                               const double g = xd / q;
                               const double xdd = s.x_ddot ? s.x_ddot(t) : s.x_dot.derivative(t);
                               const double g_dot = (xdd * q - 2.0 * x * xd * xd) / (q * q);
                               const double y = s.y(t);
                               const double r = std::hypot(y, g);
                               return r > 0.0 ? hbar * (y * s.y_dot(t) + g * g_dot) / r : 0.0;
                             }};
  h.Omega = TimeFunction{[s, hbar, Theta, y_over_x](double t) {
    const double yx = s.y(t) * s.x(t);
    return 0.5 * hbar * (Theta.derivative(t) - s.phi_omega.derivative(t)) + 0.5 * hbar * (y_over_x(t) - yx);
  }};

  std::vector<double> chi(grid.size());
  std::vector<double> theta(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    chi[i] = std::atan(s.x(grid[i]));
    theta[i] = Theta(grid[i]);
  }
  unwrap_angles(chi, kPi, 0.5 * kPi, grid);
  unwrap_angles(theta, 2.0 * kPi, 0.5 * kPi, grid);

  auto phi_dot = [s, y_over_x](double t) { return y_over_x(t) + s.y(t) * s.x(t); };
  const quad::CumulativeIntegral phibar(phi_dot, grid, opts.quadrature);
  const double phi_omega0 = s.phi_omega(0.0);
  std::vector<double> phi = phibar.samples();
  for (double& v : phi) v += phi_omega0;

  ParametrizedSystem sys;
  sys.state = make_state(grid, std::move(chi), std::move(theta), std::move(phi), sample(s.phi_omega, grid));
  sys.hamiltonian = std::move(h);
  return sys;
}

}  // namespace twolevel
