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

#include "twolevel/tabulated.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <numbers>
#include <sstream>

#include <boost/math/interpolators/makima.hpp>
#include <fmt/format.h>

#include "twolevel/error.hpp"

namespace twolevel {

namespace {

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  const auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

double parse_field(const std::string& s, std::size_t line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || !std::isfinite(v)) {
    throw PreconditionError(fmt::format("tabulated CSV line {}: bad number '{}'", line, s));
  }
  return v;
}

using Makima = boost::math::interpolators::makima<std::vector<double>>;

TimeFunction interpolated(const std::vector<double>& t, const std::vector<double>& y) {
  auto spline = std::make_shared<Makima>(std::vector<double>(t), std::vector<double>(y));
  return {[spline](double s) { return (*spline)(s); }, [spline](double s) { return spline->prime(s); }};
}

}  // namespace

TabulatedFields read_tabulated_csv(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!trim(line).empty()) break;
  }
  if (trim(line) != "t,Omega,omega_abs,phi_omega") {
    throw PreconditionError("tabulated CSV: header must be 't,Omega,omega_abs,phi_omega'");
  }
  TabulatedFields out;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty()) continue;
    std::stringstream row(line);
    std::string cell;
    double vals[4];
    int n = 0;
    while (std::getline(row, cell, ',')) {
      if (n == 4) throw PreconditionError(fmt::format("tabulated CSV line {}: too many columns", lineno));
      vals[n++] = parse_field(trim(cell), lineno);
    }
    if (n != 4) throw PreconditionError(fmt::format("tabulated CSV line {}: expected 4 columns", lineno));
    if (!out.t.empty() && !(vals[0] > out.t.back())) {
      throw PreconditionError(fmt::format("tabulated CSV line {}: t not increasing", lineno));
    }
    if (vals[2] < 0.0) throw PreconditionError(fmt::format("tabulated CSV line {}: omega_abs < 0", lineno));
    if (!out.phi_omega.empty() && std::abs(vals[3] - out.phi_omega.back()) >= std::numbers::pi) {
      throw PreconditionError(fmt::format("tabulated CSV line {}: phi_omega not unwrapped", lineno));
    }
    out.t.push_back(vals[0]);
    out.Omega.push_back(vals[1]);
    out.omega_abs.push_back(vals[2]);
    out.phi_omega.push_back(vals[3]);
  }
  return out;
}

TabulatedFields read_tabulated_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("tabulated CSV: cannot open " + path);
  return read_tabulated_csv(in);
}

HamiltonianTrajectory make_tabulated_trajectory(const TabulatedFields& f, double hbar) {
  if (f.t.size() < 4) throw PreconditionError("tabulated trajectory: need at least 4 samples");
  HamiltonianTrajectory h;
  h.Omega = interpolated(f.t, f.Omega);
  const TimeFunction raw_abs = interpolated(f.t, f.omega_abs);
  // The interpolant may undershoot slightly between samples; |ω| is clamped at 0.
  h.omega_abs = {[raw_abs](double t) { return std::max(0.0, raw_abs(t)); },
                 [raw_abs](double t) { return raw_abs.derivative(t); }};
  h.phi_omega = interpolated(f.t, f.phi_omega);
  h.hbar = hbar;
  h.t_begin = f.t.front();
  h.t_end = f.t.back();
  return h;
}

}  // namespace twolevel
