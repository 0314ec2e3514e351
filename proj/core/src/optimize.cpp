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

#include "dephasim/optimize.hpp"

#include <algorithm>
#include <cmath>

#include "dephasim/errors.hpp"

namespace dephasim {

ScalarMaximum golden_section_maximize(const std::function<double(double)>& f, double lo,
                                      double hi, double rel_tol, double abs_floor,
                                      int max_iterations) {
  if (!(hi >= lo)) throw ParameterError("golden section needs lo <= hi");
  if (!(rel_tol > 0.0)) throw ParameterError("golden section tolerance must be > 0");

  constexpr double kInvPhi = 0.6180339887498948482;
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  int evaluations = 2;

  for (int it = 0; it < max_iterations; ++it) {
    const double mid = 0.5 * (a + b);
    if (b - a <= rel_tol * std::max(std::abs(mid), abs_floor)) break;
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
    ++evaluations;
  }
  return fc >= fd ? ScalarMaximum{c, fc, evaluations} : ScalarMaximum{d, fd, evaluations};
}

}  // namespace dephasim
