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

#include "mtdlcu/tensor.hpp"

#include <cassert>
#include <cmath>

#include "mtdlcu/kernels.hpp"

namespace mtdlcu {

Matrix Tensor4::pair_matrix() const {
  const int n2 = n_ * n_;
  Matrix m(n2, n2);
  for (int r = 0; r < n2; ++r) {
    for (int c = 0; c < n2; ++c) m(r, c) = data_[static_cast<std::size_t>(r) * n2 + c];
  }
  return m;
}

Tensor4 Tensor4::from_pair_matrix(const Matrix& m, int n) {
  assert(m.rows() == n * n && m.cols() == n * n);
  Tensor4 t(n);
  const int n2 = n * n;
  for (int r = 0; r < n2; ++r) {
    for (int c = 0; c < n2; ++c) t.data_[static_cast<std::size_t>(r) * n2 + c] = m(r, c);
  }
  return t;
}

void Tensor4::add_outer(double weight, const Vector& u1, const Vector& u2, const Vector& u3,
                        const Vector& u4) {
  for (int i = 0; i < n_; ++i) {
    const double a = weight * u1(i);
    for (int j = 0; j < n_; ++j) {
      const double b = a * u2(j);
      for (int k = 0; k < n_; ++k) {
        const double c = b * u3(k);
        double* row = &data_[offset(i, j, k, 0)];
        for (int l = 0; l < n_; ++l) row[l] += c * u4(l);
      }
    }
  }
}

double Tensor4::squared_norm() const {
  std::vector<double> sq(data_.size());
  for (std::size_t i = 0; i < data_.size(); ++i) sq[i] = data_[i] * data_[i];
  return kernels::serial::pairwise_sum(sq);
}

double Tensor4::abs_sum() const { return kernels::abs_sum(data_); }

double Tensor4::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

Tensor4& Tensor4::operator+=(const Tensor4& other) {
  assert(n_ == other.n_);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Tensor4& Tensor4::operator-=(const Tensor4& other) {
  assert(n_ == other.n_);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Tensor4& Tensor4::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

}  // namespace mtdlcu
