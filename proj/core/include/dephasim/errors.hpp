// Copyright 2026 The Dephasim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dephasim {

/// Invalid model parameters (kernel rates, exponents, grid bounds, settings).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A density matrix or map-coefficient set that violates its invariants.
class StateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Arguments outside the domain where a formula is defined, e.g. the
/// small-phase expansions at omega0_t == 0.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerical procedure failed to reach its tolerance. Carries the achieved
/// residual and, where meaningful, the last two iterates.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual,
                   std::vector<double> previous = {},
                   std::vector<double> last = {})
      : std::runtime_error(what),
        residual_(residual),
        previous_(std::move(previous)),
        last_(std::move(last)) {}

  double residual() const noexcept { return residual_; }
  const std::vector<double>& previous_iterate() const noexcept { return previous_; }
  const std::vector<double>& last_iterate() const noexcept { return last_; }

 private:
  double residual_;
  std::vector<double> previous_;
  std::vector<double> last_;
};

}  // namespace dephasim
