// Copyright 2026 The mtdlcu Authors
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
#include <vector>

namespace mtdlcu {

using Objective = std::function<double(const std::vector<double>&)>;

struct MinimizeResult {
  std::vector<double> x;
  double f = 0.0;
  int evaluations = 0;
  bool converged = false;
};

/// Powell's direction-set method. Line searches bracket by golden expansion
/// and refine with GSL's Brent minimizer. Never returns a point worse than x0.
MinimizeResult powell_minimize(const Objective& f, std::vector<double> x0, int max_evaluations,
                               double rel_tol = 1e-6, double initial_step = 0.1);

}  // namespace mtdlcu
