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

#include <functional>

namespace dephasim {

struct ScalarMaximum {
  double x;
  double value;
  int evaluations;
};

/// Golden-section search for a maximum of f on [lo, hi]. Stops once the
/// bracket is narrower than rel_tol · max(|x|, abs_floor). Assumes f is
/// unimodal on the bracket; otherwise a local maximum is returned.
ScalarMaximum golden_section_maximize(const std::function<double(double)>& f, double lo,
                                      double hi, double rel_tol = 1e-4,
                                      double abs_floor = 1e-12, int max_iterations = 200);

}  // namespace dephasim
