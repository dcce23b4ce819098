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

#include <stdexcept>
#include <string>

namespace twolevel {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input or violated precondition (bad grid, non-normalized spinor, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Ω = |ω| = 0: eigenframe undefined.
class DegeneracyError : public Error {
 public:
  DegeneracyError(const std::string& what, double t) : Error(what), t_(t) {}
  double time() const noexcept { return t_; }

 private:
  double t_;
};

/// Quadrature or integration failed to reach tolerance, or hit a
/// non-removable singularity. Carries the offending interval.
class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, double t_lo, double t_hi)
      : Error(what), t_lo_(t_lo), t_hi_(t_hi) {}
  double interval_begin() const noexcept { return t_lo_; }
  double interval_end() const noexcept { return t_hi_; }

 private:
  double t_lo_;
  double t_hi_;
};

/// A synthesized no-transition Hamiltonian violates one of its invariants
/// (|sin φ̄| ≤ 1, non-negative radicand, θ₀ ≠ 0). Names the first offending time.
class SynthesisError : public Error {
 public:
  SynthesisError(const std::string& what, double t) : Error(what), t_(t) {}
  double time() const noexcept { return t_; }

 private:
  double t_;
};

}  // namespace twolevel
