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

// Hot loops in two flavors. serial:: is the reference; omp:: splits the
// outermost index across threads. Each output element is produced by exactly
// one thread in the same order as the serial loop, and reductions go through
// fixed blocks combined pairwise, so both flavors agree bitwise.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mtdlcu/tensor.hpp"

namespace mtdlcu {

/// Compressed sparse row matrix with complex entries.
struct CsrMatrix {
  std::int64_t rows = 0;
  std::int64_t cols = 0;
  std::vector<std::int64_t> row_ptr;
  std::vector<std::int64_t> col_idx;
  std::vector<Complex> values;
};

/// One Pauli string in symplectic form with its coefficient folded with
/// i^{popcount(x & z)}: term = coeff * X^x Z^z.
struct XzTerm {
  std::uint64_t x;
  std::uint64_t z;
  Complex coeff;
};

/// Terms sharing one X-mask; rows map to row ^ x.
struct XzGroup {
  std::uint64_t x;
  std::vector<std::uint64_t> z;
  std::vector<Complex> coeff;
};

namespace kernels {

inline constexpr std::size_t kSumBlock = 1024;

namespace serial {
double pairwise_sum(std::span<const double> v);
double abs_sum(std::span<const double> v);
Tensor4 rotate_two_body(const Tensor4& g, const Matrix& u);
void spmv(const CsrMatrix& a, std::span<const Complex> x, std::span<Complex> y);
CsrMatrix assemble_pauli(const std::vector<XzGroup>& groups, int n_qubits);
}  // namespace serial

namespace omp {
double abs_sum(std::span<const double> v);
Tensor4 rotate_two_body(const Tensor4& g, const Matrix& u);
void spmv(const CsrMatrix& a, std::span<const Complex> x, std::span<Complex> y);
CsrMatrix assemble_pauli(const std::vector<XzGroup>& groups, int n_qubits);
}  // namespace omp

// Default dispatch used by the library.
inline double abs_sum(std::span<const double> v) { return omp::abs_sum(v); }
inline Tensor4 rotate_two_body(const Tensor4& g, const Matrix& u) {
  return omp::rotate_two_body(g, u);
}
inline void spmv(const CsrMatrix& a, std::span<const Complex> x, std::span<Complex> y) {
  omp::spmv(a, x, y);
}
inline CsrMatrix assemble_pauli(const std::vector<XzGroup>& groups, int n_qubits) {
  return omp::assemble_pauli(groups, n_qubits);
}

/// Pairwise combination of per-block partial sums.
double combine_pairwise(std::vector<double> partials);

}  // namespace kernels
}  // namespace mtdlcu
