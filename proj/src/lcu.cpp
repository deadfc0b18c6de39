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

#include "mtdlcu/lcu.hpp"

#include "mtdlcu/kernels.hpp"

namespace mtdlcu {

double LcuDecomposition::fragment_weight_sum() const {
  std::vector<double> w;
  w.reserve(fragments.size());
  for (const auto& f : fragments) w.push_back(f.weight);
  return kernels::serial::pairwise_sum(w);
}

}  // namespace mtdlcu
