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

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "mtdlcu/fermionic_lcu.hpp"
#include "mtdlcu/lcu.hpp"
#include "mtdlcu/tensor.hpp"

namespace mtdlcu {

/// Omega * v1 (x) v2 (x) v3 (x) v4 with unit vectors; Omega reconstructs g.
struct L4Term {
  double omega = 0.0;
  std::array<Vector, 4> v;
};

struct FactorInfo {
  double residual_sq = 0.0;  // sum |Delta g|^2
  double residual_abs = 0.0;
  bool converged = true;
};

/// Tensor train from three SVDs over i | jkl, (u j) | kl and (v k) | l.
struct MpsFactors {
  int n = 0;
  Matrix u1;               // N x r1
  std::vector<Matrix> u2;  // per u: N x r2, raw slices of the combined-index factor
  std::vector<Matrix> u3;  // per v: N x r3
  Matrix w3;               // N x r3
  Vector s1, s2, s3;
  Matrix n2;  // r1 x r2 column norms of u2
  Matrix n3;  // r2 x r3 column norms of u3
  FactorInfo info;

  int bond(int cut) const;
  /// One term per (u, v, w) with nonzero renormalized weight.
  std::vector<L4Term> terms() const;
};

struct SvdChainFactors {
  int n = 0;
  std::vector<L4Term> terms;  // Omega = S1 S2 S3 with per-branch singular vectors
  FactorInfo info;
};

struct Cp4Factors {
  int rank = 0;
  std::vector<L4Term> terms;
  FactorInfo info;
};

inline constexpr double kL4Tolerance = 1e-6;
inline constexpr int kSvdChainMaxOrbitals = 16;

/// Singular values are dropped smallest first while the squared loss at a
/// cut stays within tol / 3.
MpsFactors mps_factorize(const Tensor4& g, double tol = kL4Tolerance);

/// Terms with the smallest |Omega| are dropped while their squared sum stays
/// within tol; the chain terms are mutually orthogonal so that sum is the error.
SvdChainFactors svd_chain_factorize(const Tensor4& g, double tol = kL4Tolerance);

struct Cp4Options {
  int max_rank = 512;
  double tol = kL4Tolerance;
  std::uint64_t seed = 1234;
  int max_sweeps = 400;
  double regularization = 1e-12;
};

/// Rank search by doubling and then bisection; each rank is fitted by ALS
/// from the leading SVD-chain terms, padded with seeded random columns.
Cp4Factors cp4_als(const Tensor4& g, const Cp4Options& options = {});

/// ALS at a fixed rank from the given start.
Cp4Factors cp4_fit(const Tensor4& g, std::vector<L4Term> start, const Cp4Options& options);

/// Flattening of the chain weight tensor.
Cp4Factors to_cp4(const SvdChainFactors& chain);

Tensor4 reconstruct(const std::vector<L4Term>& terms, int n);

/// Four spin fragments per nonzero weight, each -sign(Omega) q1 q2 q3 q4 with
/// weight |Omega| / 4; DataError when a vector is off unit norm by 1e-8.
LcuDecomposition l4_lcu(const std::string& method, const std::vector<L4Term>& terms,
                        const OneBodyFragment& one_body, double h0);
LcuDecomposition l4_lcu(const MpsFactors& f, const MajoranaHamiltonian& maj);
LcuDecomposition l4_lcu(const SvdChainFactors& f, const MajoranaHamiltonian& maj);
LcuDecomposition l4_lcu(const Cp4Factors& f, const MajoranaHamiltonian& maj);

}  // namespace mtdlcu
