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

#include "mtdlcu/fermionic_lcu.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <cmath>

#include "mtdlcu/errors.hpp"
#include "mtdlcu/kernels.hpp"
#include "mtdlcu/qubit_lcu.hpp"

namespace mtdlcu {

namespace {

double sign_of(double v) { return v < 0.0 ? -1.0 : 1.0; }

Matrix symmetric(const Matrix& m) { return 0.5 * (m + m.transpose()); }

}  // namespace

OneBodyFragment diagonalize_one_body(const MajoranaHamiltonian& maj) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetric(maj.h_tilde) / 2.0);
  return {es.eigenvectors(), es.eigenvalues()};
}

RotatedMajorana rotated_majorana(const Vector& u, Spin s, int flavor) {
  RotatedMajorana q;
  q.spin = s;
  q.flavor = flavor;
  q.coefficients = u;
  q.angles = givens_chain_angles(std::vector<double>(u.data(), u.data() + u.size()));
  return q;
}

void append_one_body_fragments(const OneBodyFragment& ob, LcuDecomposition& lcu) {
  for (int s = 0; s < 2; ++s)
    for (int a = 0; a < ob.eigenvalues.size(); ++a) {
      const double mu = ob.eigenvalues(a);
      if (mu == 0.0) continue;
      const Vector u = ob.rotation.col(a);
      MajoranaProduct p{Complex(0.0, sign_of(mu)),
                        {rotated_majorana(u, Spin(s), 0), rotated_majorana(u, Spin(s), 1)}};
      lcu.fragments.push_back({std::abs(mu), std::move(p)});
    }
}

std::vector<CholeskyFactor> pivoted_cholesky(const Tensor4& g, double tol) {
  const int n = g.dim();
  const int n2 = n * n;
  Matrix m = symmetric(g.pair_matrix());
  if (n2 > 0) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-8) {
      throw DataError("two-body tensor is not positive semidefinite as an N^2 x N^2 matrix");
    }
  }
  std::vector<CholeskyFactor> out;
  Matrix r = m;
  std::vector<Vector> cols;
  for (int step = 0; step < n2; ++step) {
    if (r.squaredNorm() < tol) break;
    int piv = 0;
    for (int p = 1; p < n2; ++p) {
      if (r(p, p) > r(piv, piv)) piv = p;
    }
    const double d = r(piv, piv);
    if (d <= 0.0) break;
    Vector l = r.col(piv) / std::sqrt(d);
    r -= l * l.transpose();
    CholeskyFactor f;
    f.w = symmetric(Eigen::Map<const Matrix>(l.data(), n, n).transpose());
    out.push_back(std::move(f));
  }
  return out;
}

namespace {

Tensor4 factor_tensor(const std::vector<CholeskyFactor>& factors, int n) {
  Matrix m = Matrix::Zero(n * n, n * n);
  for (const auto& f : factors) {
    Matrix wt = f.w.transpose();
    Eigen::Map<const Vector> v(wt.data(), n * n);  // row-major (i, j) order
    m += v * v.transpose();
  }
  return Tensor4::from_pair_matrix(m, n);
}

void record_residual(LcuDecomposition& lcu, const Tensor4& g, const Tensor4& approx) {
  Tensor4 res = g - approx;
  lcu.metadata.residual_sq = res.squared_norm();
  lcu.metadata.truncation_loss = res.abs_sum();
}

}  // namespace

SfResult cholesky_sf(const MajoranaHamiltonian& maj, double tol) {
  const int n = maj.n_orbitals;
  SfResult out;
  out.factors = pivoted_cholesky(maj.g, tol);
  LcuDecomposition& lcu = out.lcu;
  lcu.method = "sf";
  lcu.n_orbitals = n;
  lcu.constant = maj.h0;
  append_one_body_fragments(diagonalize_one_body(maj), lcu);
  for (const auto& f : out.factors) {
    const double nsf = 2.0 * f.w.cwiseAbs().sum();
    if (nsf == 0.0) continue;
    const double omega = nsf * nsf / 8.0;
    lcu.fragments.push_back({omega, ChebyshevSquare{f.w, nsf}});
    lcu.constant += omega;
  }
  lcu.one_norm = lcu.fragment_weight_sum();
  lcu.shape.factors = static_cast<int>(out.factors.size());
  record_residual(lcu, maj.g, factor_tensor(out.factors, n));
  return out;
}

LcuDecomposition double_factorize(const MajoranaHamiltonian& maj, std::vector<CholeskyFactor>& factors,
                                  double eigen_tol) {
  const int n = maj.n_orbitals;
  LcuDecomposition lcu;
  lcu.method = "df";
  lcu.n_orbitals = n;
  lcu.constant = maj.h0;
  append_one_body_fragments(diagonalize_one_body(maj), lcu);
  std::vector<CholeskyFactor> kept_factors;
  for (auto& f : factors) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(symmetric(f.w));
    f.eigenvalues = es.eigenvalues();
    f.rotation = es.eigenvectors();
    Vector mu = f.eigenvalues;
    for (int i = 0; i < n; ++i) {
      if (std::abs(mu(i)) < eigen_tol) mu(i) = 0.0;
    }
    const double ndf = mu.cwiseAbs().sum();
    CholeskyFactor kept;
    kept.w = f.rotation * mu.asDiagonal() * f.rotation.transpose();
    kept_factors.push_back(kept);
    if (ndf == 0.0) continue;
    const double omega = ndf * ndf / 2.0;
    lcu.fragments.push_back({omega, ChebyshevSquare{kept.w, 2.0 * ndf}});
    lcu.constant += omega;
  }
  lcu.one_norm = lcu.fragment_weight_sum();
  lcu.shape.factors = static_cast<int>(factors.size());
  record_residual(lcu, maj.g, factor_tensor(kept_factors, n));
  return lcu;
}

Tensor4 csa_fragment_tensor(const CsaFragment& f) {
  const int n = static_cast<int>(f.rotation.rows());
  Tensor4 diag(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) diag(a, a, b, b) = 4.0 * f.lambda(a, b);
  return kernels::rotate_two_body(diag, f.rotation.transpose());
}

namespace {

struct CsaContext {
  const Tensor4* residual;
  Matrix base;
  int n;
  int evaluations = 0;
};

// Captured weight sum_ab (R'_aabb)^2 of the residual in the basis base * G(theta).
double captured(const CsaContext& c, const double* theta) {
  const int n = c.n;
  std::vector<double> th(theta, theta + n * (n - 1) / 2);
  Matrix u = c.base * givens_product(th, n);
  Tensor4 rot = kernels::rotate_two_body(*c.residual, u);
  double s = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) s += rot(a, a, b, b) * rot(a, a, b, b);
  return s;
}

double csa_f(const gsl_vector* x, void* p) {
  auto* c = static_cast<CsaContext*>(p);
  ++c->evaluations;
  return -captured(*c, x->data);
}

void csa_df(const gsl_vector* x, void* p, gsl_vector* grad) {
  auto* c = static_cast<CsaContext*>(p);
  const std::size_t m = x->size;
  std::vector<double> t(x->data, x->data + m);
  const double h = 1e-6;
  for (std::size_t i = 0; i < m; ++i) {
    const double keep = t[i];
    t[i] = keep + h;
    const double fp = -captured(*c, t.data());
    t[i] = keep - h;
    const double fm = -captured(*c, t.data());
    t[i] = keep;
    gsl_vector_set(grad, i, (fp - fm) / (2 * h));
  }
  c->evaluations += static_cast<int>(2 * m);
}

void csa_fdf(const gsl_vector* x, void* p, double* f, gsl_vector* grad) {
  *f = csa_f(x, p);
  csa_df(x, p, grad);
}

// Start basis: eigenvectors of the leading Cholesky-like direction of R.
Matrix csa_start(const Tensor4& r) {
  const int n = r.dim();
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetric(r.pair_matrix()));
  Vector top = es.eigenvectors().col(n * n - 1);
  if (std::abs(es.eigenvalues()(0)) > std::abs(es.eigenvalues()(n * n - 1))) top = es.eigenvectors().col(0);
  Matrix w = symmetric(Eigen::Map<const Matrix>(top.data(), n, n).transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> ws(w);
  Matrix u = ws.eigenvectors();
  if (u.determinant() < 0) u.col(0) *= -1.0;
  return u;
}

}  // namespace

CsaResult csa_decompose(const MajoranaHamiltonian& maj, int n_fragments, const CsaBudget& budget) {
  if (n_fragments < 1) throw std::invalid_argument("CSA needs at least one fragment");
  const int n = maj.n_orbitals;
  CsaResult out;
  out.residual = maj.g;
  const int m = n * (n - 1) / 2;
  for (int frag = 0; frag < n_fragments; ++frag) {
    if (out.residual.squared_norm() < budget.tol * 1e-6) break;
    CsaContext ctx{&out.residual, csa_start(out.residual), n};
    std::vector<double> theta(m, 0.0);
    if (m > 0) {
      gsl_multimin_function_fdf fn{&csa_f, &csa_df, &csa_fdf, static_cast<std::size_t>(m), &ctx};
      gsl_vector* x = gsl_vector_calloc(m);
      gsl_multimin_fdfminimizer* s = gsl_multimin_fdfminimizer_alloc(gsl_multimin_fdfminimizer_vector_bfgs2, m);
      gsl_error_handler_t* old = gsl_set_error_handler_off();
      gsl_multimin_fdfminimizer_set(s, &fn, x, 0.05, 0.1);
      int it = 0;
      bool done = false;
      for (; it < budget.max_iterations; ++it) {
        if (gsl_multimin_fdfminimizer_iterate(s) != GSL_SUCCESS) {
          done = true;
          break;
        }
        if (gsl_multimin_test_gradient(s->gradient, 1e-9) == GSL_SUCCESS) {
          done = true;
          break;
        }
      }
      if (!done) out.converged = false;
      // The minimizer tracks its best point; never accept worse than the start.
      if (-s->f >= captured(ctx, theta.data())) theta.assign(s->x->data, s->x->data + m);
      gsl_set_error_handler(old);
      gsl_multimin_fdfminimizer_free(s);
      gsl_vector_free(x);
    }
    CsaFragment f;
    f.rotation = ctx.base * givens_product(theta, n);
    Tensor4 rot = kernels::rotate_two_body(out.residual, f.rotation);
    f.lambda = Matrix::Zero(n, n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) f.lambda(a, b) = rot(a, a, b, b) / 4.0;
    f.lambda = symmetric(f.lambda);
    out.residual -= csa_fragment_tensor(f);
    out.residual_sq.push_back(out.residual.squared_norm());
    out.fragments.push_back(std::move(f));
    if (out.residual_sq.back() < budget.tol) break;
  }

  LcuDecomposition& lcu = out.lcu;
  lcu.method = "csa";
  lcu.n_orbitals = n;
  lcu.constant = maj.h0;
  append_one_body_fragments(diagonalize_one_body(maj), lcu);
  for (const auto& f : out.fragments) {
    for (int a = 0; a < n; ++a) {
      // Q~_as Q~_as = 1 for the two spins.
      lcu.constant += 2.0 * f.lambda(a, a);
    }
    for (int s = 0; s < 2; ++s)
      for (int t = 0; t < 2; ++t)
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) {
            if (s == t && a == b) continue;
            const double l = f.lambda(a, b);
            if (l == 0.0) continue;
            const Vector ua = f.rotation.col(a), ub = f.rotation.col(b);
            // Q~_as Q~_bt = -q_as0 q_as1 q_bt0 q_bt1
            MajoranaProduct p{Complex(-sign_of(l), 0.0),
                              {rotated_majorana(ua, Spin(s), 0), rotated_majorana(ua, Spin(s), 1),
                               rotated_majorana(ub, Spin(t), 0), rotated_majorana(ub, Spin(t), 1)}};
            lcu.fragments.push_back({std::abs(l), std::move(p)});
          }
  }
  lcu.one_norm = lcu.fragment_weight_sum();
  lcu.shape.factors = static_cast<int>(out.fragments.size());
  lcu.metadata.residual_sq = out.residual.squared_norm();
  lcu.metadata.truncation_loss = out.residual.abs_sum();
  lcu.metadata.converged = out.converged;
  return out;
}

}  // namespace mtdlcu
