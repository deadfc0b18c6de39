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

#include <bit>
#include <cmath>

#include "mtdlcu/kernels.hpp"

namespace mtdlcu::kernels {

double combine_pairwise(std::vector<double> partials) {
  if (partials.empty()) return 0.0;
  while (partials.size() > 1) {
    std::size_t half = (partials.size() + 1) / 2;
    for (std::size_t i = 0; i < partials.size() / 2; ++i) {
      partials[i] = partials[2 * i] + partials[2 * i + 1];
    }
    if (partials.size() % 2 == 1) partials[half - 1] = partials.back();
    partials.resize(half);
  }
  return partials[0];
}

namespace {

double block_sum(std::span<const double> v, std::size_t b, bool absolute) {
  std::size_t lo = b * kSumBlock;
  std::size_t hi = std::min(v.size(), lo + kSumBlock);
  double s = 0.0;
  for (std::size_t i = lo; i < hi; ++i) s += absolute ? std::abs(v[i]) : v[i];
  return s;
}

std::size_t n_blocks(std::size_t n) { return (n + kSumBlock - 1) / kSumBlock; }

}  // namespace

// Transform one tensor mode: out[.., a, ..] = sum_b u(b, a) in[.., b, ..].
// `mode` picks the index; inner/outer strides follow from row-major layout.
void rotate_mode_rows(const std::vector<double>& in, std::vector<double>& out, const Matrix& u,
                      int n, int mode, std::size_t outer_begin, std::size_t outer_end) {
  std::size_t inner = 1;
  for (int m = mode + 1; m < 4; ++m) inner *= n;
  const std::size_t stride = inner;
  for (std::size_t o = outer_begin; o < outer_end; ++o) {
    const std::size_t base = o * n * inner;
    for (int a = 0; a < n; ++a) {
      double* dst = &out[base + a * stride];
      for (std::size_t t = 0; t < inner; ++t) dst[t] = 0.0;
      for (int b = 0; b < n; ++b) {
        const double c = u(b, a);
        if (c == 0.0) continue;
        const double* src = &in[base + b * stride];
        for (std::size_t t = 0; t < inner; ++t) dst[t] += c * src[t];
      }
    }
  }
}

namespace serial {

double pairwise_sum(std::span<const double> v) {
  std::vector<double> partials(n_blocks(v.size()));
  for (std::size_t b = 0; b < partials.size(); ++b) partials[b] = block_sum(v, b, false);
  return combine_pairwise(std::move(partials));
}

double abs_sum(std::span<const double> v) {
  std::vector<double> partials(n_blocks(v.size()));
  for (std::size_t b = 0; b < partials.size(); ++b) partials[b] = block_sum(v, b, true);
  return combine_pairwise(std::move(partials));
}

Tensor4 rotate_two_body(const Tensor4& g, const Matrix& u) {
  const int n = g.dim();
  std::vector<double> a(g.data().begin(), g.data().end());
  std::vector<double> b(a.size());
  for (int mode = 0; mode < 4; ++mode) {
    std::size_t outer = 1;
    for (int m = 0; m < mode; ++m) outer *= n;
    rotate_mode_rows(a, b, u, n, mode, 0, outer);
    a.swap(b);
  }
  Tensor4 out(n);
  std::copy(a.begin(), a.end(), out.data().begin());
  return out;
}

void spmv(const CsrMatrix& a, std::span<const Complex> x, std::span<Complex> y) {
  for (std::int64_t r = 0; r < a.rows; ++r) {
    Complex s = 0.0;
    for (std::int64_t p = a.row_ptr[r]; p < a.row_ptr[r + 1]; ++p) s += a.values[p] * x[a.col_idx[p]];
    y[r] = s;
  }
}

}  // namespace serial

void assemble_pauli_row(const std::vector<XzGroup>& groups, std::uint64_t row,
                        std::vector<std::int64_t>& cols, std::vector<Complex>& vals) {
  // <row| X^x Z^z |col> is nonzero only for col = row ^ x, where
  // X^x Z^z |col> = (-1)^{popcount(z & col)} |col ^ x>.
  for (const auto& grp : groups) {
    const std::uint64_t col = row ^ grp.x;
    Complex s = 0.0;
    for (std::size_t t = 0; t < grp.z.size(); ++t) {
      const bool neg = std::popcount(grp.z[t] & col) & 1;
      s += neg ? -grp.coeff[t] : grp.coeff[t];
    }
    if (std::abs(s) > 1e-14) {
      cols.push_back(static_cast<std::int64_t>(col));
      vals.push_back(s);
    }
  }
}

namespace serial {

CsrMatrix assemble_pauli(const std::vector<XzGroup>& groups, int n_qubits) {
  CsrMatrix m;
  const std::int64_t dim = std::int64_t{1} << n_qubits;
  m.rows = m.cols = dim;
  m.row_ptr.assign(dim + 1, 0);
  for (std::int64_t r = 0; r < dim; ++r) {
    assemble_pauli_row(groups, static_cast<std::uint64_t>(r), m.col_idx, m.values);
    m.row_ptr[r + 1] = static_cast<std::int64_t>(m.col_idx.size());
  }
  return m;
}

}  // namespace serial
}  // namespace mtdlcu::kernels
