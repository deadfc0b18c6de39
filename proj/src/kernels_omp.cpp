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

#include <omp.h>

#include <cmath>

#include "mtdlcu/kernels.hpp"

namespace mtdlcu::kernels {

void rotate_mode_rows(const std::vector<double>& in, std::vector<double>& out, const Matrix& u,
                      int n, int mode, std::size_t outer_begin, std::size_t outer_end);
void assemble_pauli_row(const std::vector<XzGroup>& groups, std::uint64_t row,
                        std::vector<std::int64_t>& cols, std::vector<Complex>& vals);

namespace omp {

double abs_sum(std::span<const double> v) {
  const std::int64_t nb = static_cast<std::int64_t>((v.size() + kSumBlock - 1) / kSumBlock);
  std::vector<double> partials(nb);
#pragma omp parallel for schedule(static)
  for (std::int64_t b = 0; b < nb; ++b) {
    std::size_t lo = b * kSumBlock;
    std::size_t hi = std::min(v.size(), lo + kSumBlock);
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += std::abs(v[i]);
    partials[b] = s;
  }
  return combine_pairwise(std::move(partials));
}

Tensor4 rotate_two_body(const Tensor4& g, const Matrix& u) {
  const int n = g.dim();
  std::vector<double> a(g.data().begin(), g.data().end());
  std::vector<double> b(a.size());
  for (int mode = 0; mode < 4; ++mode) {
    std::int64_t outer = 1;
    for (int m = 0; m < mode; ++m) outer *= n;
    if (outer == 1) {
      // Mode 0: split the inner range instead by treating each output slab alone.
      std::size_t inner = static_cast<std::size_t>(n) * n * n;
#pragma omp parallel for schedule(static)
      for (std::int64_t t = 0; t < static_cast<std::int64_t>(inner); ++t) {
        for (int aa = 0; aa < n; ++aa) {
          double s = 0.0;
          for (int bb = 0; bb < n; ++bb) {
            const double c = u(bb, aa);
            if (c == 0.0) continue;
            s += c * a[bb * inner + t];
          }
          b[aa * inner + t] = s;
        }
      }
    } else {
#pragma omp parallel for schedule(static)
      for (std::int64_t o = 0; o < outer; ++o) rotate_mode_rows(a, b, u, n, mode, o, o + 1);
    }
    a.swap(b);
  }
  Tensor4 out(n);
  std::copy(a.begin(), a.end(), out.data().begin());
  return out;
}

void spmv(const CsrMatrix& a, std::span<const Complex> x, std::span<Complex> y) {
#pragma omp parallel for schedule(static)
  for (std::int64_t r = 0; r < a.rows; ++r) {
    Complex s = 0.0;
    for (std::int64_t p = a.row_ptr[r]; p < a.row_ptr[r + 1]; ++p) s += a.values[p] * x[a.col_idx[p]];
    y[r] = s;
  }
}

CsrMatrix assemble_pauli(const std::vector<XzGroup>& groups, int n_qubits) {
  const std::int64_t dim = std::int64_t{1} << n_qubits;
  const int nt = omp_get_max_threads();
  const std::int64_t chunk = (dim + nt - 1) / nt;
  std::vector<std::vector<std::int64_t>> cols(nt);
  std::vector<std::vector<Complex>> vals(nt);
  std::vector<std::vector<std::int64_t>> counts(nt);
#pragma omp parallel for schedule(static, 1)
  for (int t = 0; t < nt; ++t) {
    const std::int64_t lo = t * chunk;
    const std::int64_t hi = std::min(dim, lo + chunk);
    for (std::int64_t r = lo; r < hi; ++r) {
      const std::size_t before = cols[t].size();
      assemble_pauli_row(groups, static_cast<std::uint64_t>(r), cols[t], vals[t]);
      counts[t].push_back(static_cast<std::int64_t>(cols[t].size() - before));
    }
  }
  CsrMatrix m;
  m.rows = m.cols = dim;
  m.row_ptr.assign(dim + 1, 0);
  std::int64_t r = 0;
  for (int t = 0; t < nt; ++t) {
    for (std::int64_t c : counts[t]) {
      m.row_ptr[r + 1] = m.row_ptr[r] + c;
      ++r;
    }
    m.col_idx.insert(m.col_idx.end(), cols[t].begin(), cols[t].end());
    m.values.insert(m.values.end(), vals[t].begin(), vals[t].end());
  }
  return m;
}

}  // namespace omp
}  // namespace mtdlcu::kernels
