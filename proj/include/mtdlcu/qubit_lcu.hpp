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

#include <cstdint>
#include <vector>

#include "mtdlcu/integrals.hpp"
#include "mtdlcu/lcu.hpp"
#include "mtdlcu/majorana.hpp"

namespace mtdlcu {

inline constexpr double kSparseThreshold = 1e-5;

/// Q_ij,s = i gamma_{is0} gamma_{js1} as a phased Pauli word.
PhasedWord reflection_word(int i, int j, Spin s, int n_orbitals);

/// Tensor-level Pauli LCU: one fragment per Q_ijs (weight |h~_ij|/2) and per
/// Q_ijs Q_klt (weight |g_ijkl|/4), entries below keep_threshold dropped.
LcuDecomposition sparse_pauli_lcu(const MajoranaHamiltonian& maj,
                                  double keep_threshold = kSparseThreshold);

/// sum |h~_ij| + sum |g_ijkl|, the tensor-level Pauli norm.
double pauli_tensor_norm(const MajoranaHamiltonian& maj);
double pauli_tensor_norm(const Matrix& h_tilde, const Tensor4& g);

/// 1/4 sum_{s!=t} |g| + 1/2 sum_s sum_{i>k, l>j} |g_ijkl - g_ilkj|.
double spin_separated_two_body_norm(const MajoranaHamiltonian& maj);

/// Exact sum |d_q| of the combined qubit operator (identity excluded).
double qubit_pauli_norm(const MajoranaHamiltonian& maj);

/// S: unique one-body entries (i <= j) plus unique 8-fold two-body entries
/// with magnitude >= threshold.
int sparse_term_count(const MajoranaHamiltonian& maj, double threshold = kSparseThreshold);

struct HermitianTerm {
  PauliWord word;
  double coeff;
};

/// Non-identity terms of a Hermitian PauliSum; throws DataError when a
/// coefficient has an imaginary part above tol.
std::vector<HermitianTerm> hermitian_terms(const PauliSum& op, double tol = 1e-10);

/// Q and QQ terms without cross-cancellation between index patterns.
/// Anticommuting QQ pairs cancel exactly and are skipped, so are Q^2 = 1.
std::vector<HermitianTerm> tensor_level_terms(const MajoranaHamiltonian& maj,
                                              double keep_threshold = kSparseThreshold);

/// Sorted insertion: descending |d|, ties by word then input position.
LcuDecomposition sorted_insertion_ac(std::vector<HermitianTerm> terms, int n_orbitals);
LcuDecomposition sorted_insertion_ac(const PauliSum& op);

enum class AcLevel { kQubit, kTensor };
inline constexpr AcLevel kDefaultAcLevel = AcLevel::kTensor;

LcuDecomposition ac_lcu(const MajoranaHamiltonian& maj, AcLevel level = kDefaultAcLevel);

/// Angles of R_j = exp(theta_j P_{j+1} P_j) with R_{J-1}...R_1 P_1 (...)^dag = sum c_j P_j.
std::vector<double> givens_chain_angles(const std::vector<double>& c);
/// Forward map of givens_chain_angles.
std::vector<double> givens_chain_coefficients(const std::vector<double>& angles);

/// phi_q = asin(d_q / sqrt(sum_{i<=q} d_i^2)) / 2 in group order.
std::vector<double> naive_ac_phases(const AcGroup& group);

/// A_n assembled three ways, for cross-checks.
PauliSum ac_group_operator(const AcGroup& group);
CMatrix ac_group_matrix_givens(const AcGroup& group);
CMatrix ac_group_matrix_naive(const AcGroup& group);

struct OrbitalRotation {
  Matrix u;
  std::vector<double> angles;  // Givens angles, pairs (i < j) in row order
};

/// U = prod_{i<j} G_ij(theta_ij), applied left to right in row order.
Matrix givens_product(const std::vector<double>& angles, int n);

enum class OoObjective { kPauli, kAc };

struct OoBudget {
  int max_evaluations = 40000;  // per start
  int restarts = 3;
  std::uint64_t seed = 20260101;
  double rel_tol = 1e-6;
  int ac_evaluations = 300;  // budget of the AC refinement stage
};

struct OoResult {
  OrbitalRotation rotation;
  MolecularIntegrals rotated;
  double initial_norm = 0.0;
  double final_norm = 0.0;
  bool converged = true;
  int evaluations = 0;
};

OoResult orbital_optimize(const MolecularIntegrals& mol, OoObjective objective,
                          const OoBudget& budget = {});

}  // namespace mtdlcu
