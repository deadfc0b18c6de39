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

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "mtdlcu/majorana.hpp"
#include "mtdlcu/tensor.hpp"

namespace mtdlcu {

/// phase * word; phase is one of +-1, +-i.
struct PauliTerm {
  PauliWord word;
  Complex phase{1.0, 0.0};
};

/// (1/a) sum_q d_q P_q over mutually anticommuting Hermitian words.
struct AcGroup {
  std::vector<PauliWord> words;
  std::vector<double> coefficients;  // d_q, real
  double norm = 0.0;                 // a_n
  std::vector<double> angles;        // Givens chain, size |K_n| - 1
};

/// sum_p c_p gamma_{p spin, flavor} with unit-norm c, plus its Givens angles.
struct RotatedMajorana {
  Spin spin = Spin::kAlpha;
  int flavor = 0;
  Vector coefficients;
  std::vector<double> angles;
};

/// phase * q_1 q_2 ... q_m.
struct MajoranaProduct {
  Complex phase{1.0, 0.0};
  std::vector<RotatedMajorana> factors;
};

/// 2 (P / normalization)^2 - 1 with P = sum_s sum_pq w_pq Q_pqs,
/// Q_pqs = i gamma_{ps0} gamma_{qs1}. A contraction, realised by block encoding.
struct ChebyshevSquare {
  Matrix w;
  double normalization = 1.0;
};

using UnitaryOp = std::variant<PauliTerm, AcGroup, MajoranaProduct, ChebyshevSquare>;

struct Fragment {
  double weight = 0.0;  // u_k >= 0, signs live in the op
  UnitaryOp op;
};

/// Problem-size numbers consumed by the cost model.
struct LcuShape {
  int sparse_terms = 0;              // S
  std::vector<int> group_sizes;      // G_n
  int factors = 0;                   // M (DF), fragments (CSA)
  int weights = 0;                   // W (L4)
  int bond[3] = {0, 0, 0};           // alpha_1..3 (MPS)
};

struct LcuMetadata {
  double truncation_loss = 0.0;      // 1-norm of dropped tensor entries
  double residual_sq = 0.0;          // sum |Delta g|^2 of the factorization
  bool converged = true;
  std::map<std::string, double> values;
};

struct LcuDecomposition {
  std::string method;
  int n_orbitals = 0;
  double constant = 0.0;  // identity part, not counted in one_norm
  std::vector<Fragment> fragments;
  double one_norm = 0.0;
  LcuShape shape;
  LcuMetadata metadata;

  /// Pairwise sum of fragment weights.
  double fragment_weight_sum() const;
};

}  // namespace mtdlcu
