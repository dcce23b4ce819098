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

#include "twolevel/time_function.hpp"

#include "twolevel/error.hpp"

namespace twolevel {

TimeFunction TimeFunction::constant(double c) {
  return {[c](double) { return c; }, [](double) { return 0.0; }};
}

double TimeFunction::derivative(double t) const {
  if (derivative_) return derivative_(t);
  if (!value_) throw PreconditionError("TimeFunction: empty function");
  const double h = fd_step(t);
  return (value_(t + h) - value_(t - h)) / (2.0 * h);
}

TimeFunction TimeFunction::derivative_function() const {
  if (derivative_) return TimeFunction{derivative_};
  TimeFunction self = *this;
  return TimeFunction{[self](double t) { return self.derivative(t); }};
}

}  // namespace twolevel
