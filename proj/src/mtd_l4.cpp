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

#include "mtdlcu/mtd_l4.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "mtdlcu/errors.hpp"

namespace mtdlcu {

namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct Svd {
  Matrix u;
  Vector s;
  Matrix v;
};

Svd svd(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> j(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return {j.matrixU(), j.singularValues(), j.matrixV()};
}

/// Number of singular values kept when the tail's squared sum may reach budget.
int kept_rank(const Vector& s, double budget) {
  int r = static_cast<int>(s.size());
  double dropped = 0.0;
  while (r > 0) {
    const double next = dropped + s(r - 1) * s(r - 1);
    if (next > budget) break;
    dropped = next;
    --r;
  }
  return r;
}

void fill_info(FactorInfo& info, const Tensor4& g, const std::vector<L4Term>& terms) {
  Tensor4 res = g - reconstruct(terms, g.dim());
  info.residual_sq = res.squared_norm();
  info.residual_abs = res.abs_sum();
}

double sign_of(double x) { return x < 0.0 ? -1.0 : 1.0; }

}  // namespace

Tensor4 reconstruct(const std::vector<L4Term>& terms, int n) {
  Tensor4 g(n);
  for (const auto& t : terms) g.add_outer(t.omega, t.v[0], t.v[1], t.v[2], t.v[3]);
  return g;
}

int MpsFactors::bond(int cut) const {
  switch (cut) {
    case 0: return static_cast<int>(s1.size());
    case 1: return static_cast<int>(s2.size());
    default: return static_cast<int>(s3.size());
  }
}

std::vector<L4Term> MpsFactors::terms() const {
  std::vector<L4Term> out;
  const int r1 = bond(0), r2 = bond(1), r3 = bond(2);
  for (int u = 0; u < r1; ++u)
    for (int v = 0; v < r2; ++v) {
      if (n2(u, v) == 0.0) continue;
      for (int w = 0; w < r3; ++w) {
        if (n3(v, w) == 0.0) continue;
        const double omega = s1(u) * s2(v) * s3(w) * n2(u, v) * n3(v, w);
        if (omega == 0.0) continue;
        out.push_back({omega,
                       {Vector(u1.col(u)), Vector(u2[u].col(v) / n2(u, v)), Vector(u3[v].col(w) / n3(v, w)),
                        Vector(w3.col(w))}});
      }
    }
  return out;
}

MpsFactors mps_factorize(const Tensor4& g, double tol) {
  const int n = g.dim();
  const int n2 = n * n, n3 = n2 * n;
  MpsFactors f;
  f.n = n;
  const double budget = tol / 3.0;

  Matrix m1 = Eigen::Map<const RowMatrix>(g.data().data(), n, n3);
  Svd a = svd(m1);
  const int r1 = kept_rank(a.s, budget);
  f.u1 = a.u.leftCols(r1);
  f.s1 = a.s.head(r1);
  // Rows (u, j), columns (k, l).
  RowMatrix rest1 = a.v.leftCols(r1).transpose();  // r1 x N^3
  Matrix m2 = Eigen::Map<const RowMatrix>(rest1.data(), r1 * n, n2);

  Svd b = svd(m2);
  const int r2 = kept_rank(b.s, budget);
  f.s2 = b.s.head(r2);
  RowMatrix rest2 = b.v.leftCols(r2).transpose();  // r2 x N^2
  Matrix m3 = Eigen::Map<const RowMatrix>(rest2.data(), r2 * n, n);

  Svd c = svd(m3);
  const int r3 = kept_rank(c.s, budget);
  f.s3 = c.s.head(r3);
  f.w3 = c.v.leftCols(r3);

  f.u2.assign(r1, Matrix(n, r2));
  f.n2 = Matrix::Zero(r1, r2);
  for (int u = 0; u < r1; ++u) {
    f.u2[u] = b.u.block(u * n, 0, n, r2);
    for (int v = 0; v < r2; ++v) f.n2(u, v) = f.u2[u].col(v).norm();
  }
  f.u3.assign(r2, Matrix(n, r3));
  f.n3 = Matrix::Zero(r2, r3);
  for (int v = 0; v < r2; ++v) {
    f.u3[v] = c.u.block(v * n, 0, n, r3);
    for (int w = 0; w < r3; ++w) f.n3(v, w) = f.u3[v].col(w).norm();
  }
  fill_info(f.info, g, f.terms());
  return f;
}

SvdChainFactors svd_chain_factorize(const Tensor4& g, double tol) {
  const int n = g.dim();
  if (n > kSvdChainMaxOrbitals) throw GuardError("SVD chain limited to N <= 16");
  const int n2 = n * n, n3 = n2 * n;
  SvdChainFactors f;
  f.n = n;
  Matrix m1 = Eigen::Map<const RowMatrix>(g.data().data(), n, n3);
  Svd a = svd(m1);
  std::vector<L4Term> all;
  for (int x = 0; x < a.s.size(); ++x) {
    if (a.s(x) == 0.0) continue;
    Vector row = a.v.col(x);
    Matrix m2 = Eigen::Map<const RowMatrix>(row.data(), n, n2);
    Svd b = svd(m2);
    for (int y = 0; y < b.s.size(); ++y) {
      if (b.s(y) == 0.0) continue;
      Vector row2 = b.v.col(y);
      Matrix m3 = Eigen::Map<const RowMatrix>(row2.data(), n, n);
      Svd c = svd(m3);
      for (int z = 0; z < c.s.size(); ++z) {
        const double omega = a.s(x) * b.s(y) * c.s(z);
        if (omega == 0.0) continue;
        all.push_back({omega, {Vector(a.u.col(x)), Vector(b.u.col(y)), Vector(c.u.col(z)), Vector(c.v.col(z))}});
      }
    }
  }
  std::vector<std::size_t> order(all.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t p, std::size_t q) { return std::abs(all[p].omega) > std::abs(all[q].omega); });
  std::size_t keep = order.size();
  double dropped = 0.0;
  while (keep > 0) {
    const double w = all[order[keep - 1]].omega;
    if (dropped + w * w > tol) break;
    dropped += w * w;
    --keep;
  }
  for (std::size_t p = 0; p < keep; ++p) f.terms.push_back(std::move(all[order[p]]));
  fill_info(f.info, g, f.terms);
  return f;
}

Cp4Factors to_cp4(const SvdChainFactors& chain) {
  Cp4Factors c;
  c.rank = static_cast<int>(chain.terms.size());
  c.terms = chain.terms;
  c.info = chain.info;
  return c;
}

namespace {

/// sum over the three other modes of g against the factor columns.
Matrix mttkrp(const Tensor4& g, const std::array<Matrix, 4>& f, int mode) {
  const int n = g.dim();
  const int r = static_cast<int>(f[0].cols());
  Matrix out = Matrix::Zero(n, r);
  int idx[4];
  for (idx[0] = 0; idx[0] < n; ++idx[0])
    for (idx[1] = 0; idx[1] < n; ++idx[1])
      for (idx[2] = 0; idx[2] < n; ++idx[2])
        for (idx[3] = 0; idx[3] < n; ++idx[3]) {
          const double x = g(idx[0], idx[1], idx[2], idx[3]);
          if (x == 0.0) continue;
          for (int c = 0; c < r; ++c) {
            double p = x;
            for (int m = 0; m < 4; ++m) {
              if (m != mode) p *= f[m](idx[m], c);
            }
            out(idx[mode], c) += p;
          }
        }
  return out;
}

double cp_residual(const Tensor4& g, const std::array<Matrix, 4>& f) {
  const int n = g.dim();
  const int r = static_cast<int>(f[0].cols());
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double m = 0.0;
          for (int c = 0; c < r; ++c) m += f[0](i, c) * f[1](j, c) * f[2](k, c) * f[3](l, c);
          const double d = g(i, j, k, l) - m;
          s += d * d;
        }
  return s;
}

std::vector<L4Term> normalized_terms(const std::array<Matrix, 4>& f) {
  std::vector<L4Term> out;
  const int r = static_cast<int>(f[0].cols());
  for (int c = 0; c < r; ++c) {
    L4Term t;
    t.omega = 1.0;
    for (int m = 0; m < 4; ++m) {
      Vector v = f[m].col(c);
      const double norm = v.norm();
      if (norm == 0.0) {
        t.omega = 0.0;
        break;
      }
      v /= norm;
      Eigen::Index big;
      v.cwiseAbs().maxCoeff(&big);
      if (v(big) < 0.0) {
        v = -v;
        t.omega = -t.omega;
      }
      t.omega *= norm;
      t.v[m] = v;
    }
    if (t.omega != 0.0) out.push_back(std::move(t));
  }
  return out;
}

Cp4Factors cp4_from_start(const Tensor4& g, const std::vector<L4Term>& chain, int rank, const Cp4Options& o) {
  const int n = g.dim();
  std::mt19937_64 rng(o.seed + static_cast<std::uint64_t>(rank));
  std::normal_distribution<double> d(0.0, 1e-3);
  std::vector<L4Term> start;
  for (int c = 0; c < rank; ++c) {
    if (c < static_cast<int>(chain.size())) {
      start.push_back(chain[c]);
    } else {
      L4Term t;
      t.omega = 1.0;
      for (auto& v : t.v) {
        v = Vector(n);
        for (int i = 0; i < n; ++i) v(i) = d(rng);
      }
      start.push_back(std::move(t));
    }
  }
  return cp4_fit(g, std::move(start), o);
}

}  // namespace

Cp4Factors cp4_fit(const Tensor4& g, std::vector<L4Term> start, const Cp4Options& o) {
  const int n = g.dim();
  const int r = static_cast<int>(start.size());
  std::array<Matrix, 4> f;
  for (auto& m : f) m = Matrix::Zero(n, r);
  for (int c = 0; c < r; ++c) {
    // Spread the weight evenly so no factor starts badly scaled.
    const double scale = std::pow(std::abs(start[c].omega), 0.25);
    for (int m = 0; m < 4; ++m) f[m].col(c) = scale * start[c].v[m];
    f[0].col(c) *= sign_of(start[c].omega);
  }
  double res = cp_residual(g, f);
  bool converged = res < o.tol;
  for (int sweep = 0; sweep < o.max_sweeps && !converged; ++sweep) {
    for (int mode = 0; mode < 4; ++mode) {
      Matrix gram = Matrix::Ones(r, r);
      for (int m = 0; m < 4; ++m) {
        if (m != mode) gram = gram.cwiseProduct(f[m].transpose() * f[m]);
      }
      gram.diagonal().array() += o.regularization;
      Matrix rhs = mttkrp(g, f, mode);
      f[mode] = gram.ldlt().solve(rhs.transpose()).transpose();
    }
    const double next = cp_residual(g, f);
    converged = next < o.tol;
    const bool stalled = res - next <= 1e-10 * res;
    res = next;
    if (stalled) break;
  }
  Cp4Factors out;
  out.rank = r;
  out.terms = normalized_terms(f);
  out.info.residual_sq = res;
  out.info.residual_abs = (g - reconstruct(out.terms, n)).abs_sum();
  out.info.converged = converged;
  return out;
}

Cp4Factors cp4_als(const Tensor4& g, const Cp4Options& o) {
  if (o.max_rank < 1) throw std::invalid_argument("max_rank must be positive");
  if (g.squared_norm() < o.tol) return Cp4Factors{};
  const std::vector<L4Term> chain = svd_chain_factorize(g, 0.0).terms;
  Cp4Factors best;
  bool found = false;
  int lo = 0, hi = 0;  // largest failing rank, smallest passing rank
  for (int r = 1;; r = std::min(2 * r, o.max_rank)) {
    Cp4Factors f = cp4_from_start(g, chain, r, o);
    if (f.info.residual_sq < o.tol) {
      best = std::move(f);
      found = true;
      hi = r;
      break;
    }
    lo = r;
    if (!found && (best.terms.empty() || f.info.residual_sq < best.info.residual_sq)) best = std::move(f);
    if (r == o.max_rank) break;
  }
  if (!found) {
    best.info.converged = false;
    return best;
  }
  while (hi - lo > 1) {
    const int mid = lo + (hi - lo) / 2;
    Cp4Factors f = cp4_from_start(g, chain, mid, o);
    if (f.info.residual_sq < o.tol) {
      best = std::move(f);
      hi = mid;
    } else {
      lo = mid;
    }
  }
  best.info.converged = true;
  return best;
}

LcuDecomposition l4_lcu(const std::string& method, const std::vector<L4Term>& terms,
                        const OneBodyFragment& one_body, double h0) {
  LcuDecomposition lcu;
  lcu.method = method;
  lcu.n_orbitals = static_cast<int>(one_body.eigenvalues.size());
  lcu.constant = h0;
  append_one_body_fragments(one_body, lcu);
  int weights = 0;
  for (const auto& t : terms) {
    if (t.omega == 0.0) continue;
    for (const auto& v : t.v) {
      if (std::abs(v.norm() - 1.0) > 1e-8) throw DataError("L4 direction vector is not unit norm");
    }
    ++weights;
    std::array<Vector, 4> unit;
    for (int m = 0; m < 4; ++m) unit[m] = t.v[m] / t.v[m].norm();
    for (int s = 0; s < 2; ++s)
      for (int u = 0; u < 2; ++u) {
        MajoranaProduct p{Complex(-sign_of(t.omega), 0.0),
                          {rotated_majorana(unit[0], Spin(s), 0), rotated_majorana(unit[1], Spin(s), 1),
                           rotated_majorana(unit[2], Spin(u), 0), rotated_majorana(unit[3], Spin(u), 1)}};
        lcu.fragments.push_back({std::abs(t.omega) / 4.0, std::move(p)});
      }
  }
  lcu.one_norm = lcu.fragment_weight_sum();
  lcu.shape.weights = weights;
  return lcu;
}

namespace {

void copy_info(LcuDecomposition& lcu, const FactorInfo& info) {
  lcu.metadata.residual_sq = info.residual_sq;
  lcu.metadata.truncation_loss = info.residual_abs;
  lcu.metadata.converged = info.converged;
}

}  // namespace

LcuDecomposition l4_lcu(const MpsFactors& f, const MajoranaHamiltonian& maj) {
  LcuDecomposition lcu = l4_lcu("l4-mps", f.terms(), diagonalize_one_body(maj), maj.h0);
  for (int c = 0; c < 3; ++c) lcu.shape.bond[c] = f.bond(c);
  copy_info(lcu, f.info);
  return lcu;
}

LcuDecomposition l4_lcu(const SvdChainFactors& f, const MajoranaHamiltonian& maj) {
  LcuDecomposition lcu = l4_lcu("l4-svd", f.terms, diagonalize_one_body(maj), maj.h0);
  copy_info(lcu, f.info);
  return lcu;
}

LcuDecomposition l4_lcu(const Cp4Factors& f, const MajoranaHamiltonian& maj) {
  LcuDecomposition lcu = l4_lcu("l4-cp4", f.terms, diagonalize_one_body(maj), maj.h0);
  copy_info(lcu, f.info);
  return lcu;
}

}  // namespace mtdlcu
