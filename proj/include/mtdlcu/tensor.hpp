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

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace mtdlcu {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Dense real 4-index tensor, row-major in (i, j, k, l).
class Tensor4 {
 public:
  Tensor4() = default;
  explicit Tensor4(int n) : n_(n), data_(static_cast<std::size_t>(n) * n * n * n, 0.0) {}

  int dim() const { return n_; }
  std::size_t size() const { return data_.size(); }

  std::size_t offset(int i, int j, int k, int l) const {
    return ((static_cast<std::size_t>(i) * n_ + j) * n_ + k) * n_ + l;
  }
  double& operator()(int i, int j, int k, int l) { return data_[offset(i, j, k, l)]; }
  double operator()(int i, int j, int k, int l) const { return data_[offset(i, j, k, l)]; }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  /// The N^2 x N^2 matricization with rows (i, j) and columns (k, l).
  Matrix pair_matrix() const;
  static Tensor4 from_pair_matrix(const Matrix& m, int n);

  /// Sum over l of the outer product u1 (x) u2 (x) u3 (x) u4, scaled.
  void add_outer(double weight, const Vector& u1, const Vector& u2, const Vector& u3,
                 const Vector& u4);

  double squared_norm() const;
  double abs_sum() const;
  double max_abs() const;

  Tensor4& operator+=(const Tensor4& other);
  Tensor4& operator-=(const Tensor4& other);
  Tensor4& operator*=(double s);
  friend Tensor4 operator-(Tensor4 a, const Tensor4& b) { return a -= b; }
  friend Tensor4 operator+(Tensor4 a, const Tensor4& b) { return a += b; }

 private:
  int n_ = 0;
  std::vector<double> data_;
};

}  // namespace mtdlcu
