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

#include "mtdlcu/lcu.hpp"
#include "mtdlcu/majorana.hpp"

namespace mtdlcu {

inline constexpr double kFactorTolerance = 1e-6;  // sum |Delta g|^2
inline constexpr double kDfEigenTolerance = 1e-10;

/// h~/2 = U diag(mu) U^T.
struct OneBodyFragment {
  Matrix rotation;
  Vector eigenvalues;
  double one_norm() const { return 2.0 * eigenvalues.cwiseAbs().sum(); }
};

OneBodyFragment diagonalize_one_body(const MajoranaHamiltonian& maj);

/// Fragments sum_s mu_a Q~_as for the diagonalized one-body part.
void append_one_body_fragments(const OneBodyFragment& ob, LcuDecomposition& lcu);

/// Rotated single Majorana sum_p u_p gamma_{p s m}; angles filled in.
RotatedMajorana rotated_majorana(const Vector& u, Spin s, int flavor);

struct CholeskyFactor {
  Matrix w;  // symmetric N x N
  // Filled by double_factorize: w = rotation diag(eigenvalues) rotation^T.
  Vector eigenvalues;
  Matrix rotation;
};

/// Pivoted Cholesky of g as an N^2 x N^2 matrix; stops when the residual's
/// squared Frobenius norm drops below tol. DataError when g is not PSD
/// (an eigenvalue below -1e-8).
std::vector<CholeskyFactor> pivoted_cholesky(const Tensor4& g, double tol = kFactorTolerance);

struct SfResult {
  std::vector<CholeskyFactor> factors;
  LcuDecomposition lcu;
};

SfResult cholesky_sf(const MajoranaHamiltonian& maj, double tol = kFactorTolerance);

/// Eigendecomposes each factor in place; DF fragments weigh (sum|mu|)^2 / 2.
LcuDecomposition double_factorize(const MajoranaHamiltonian& maj, std::vector<CholeskyFactor>& factors,
                                  double eigen_tol = kDfEigenTolerance);

struct CsaFragment {
  Matrix rotation;
  Matrix lambda;  // operator convention: H2 part = sum_ab lambda_ab sum_st Q~_as Q~_bt
};

struct CsaBudget {
  int max_iterations = 400;  // per fragment
  double tol = kFactorTolerance;
  std::uint64_t seed = 7;
};

struct CsaResult {
  std::vector<CsaFragment> fragments;
  Tensor4 residual;
  std::vector<double> residual_sq;  // after each fragment
  bool converged = true;
  LcuDecomposition lcu;
};

CsaResult csa_decompose(const MajoranaHamiltonian& maj, int n_fragments, const CsaBudget& budget = {});

/// The two-body tensor represented by one CSA fragment.
Tensor4 csa_fragment_tensor(const CsaFragment& f);

}  // namespace mtdlcu
