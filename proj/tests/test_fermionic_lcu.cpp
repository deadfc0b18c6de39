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

#include <gtest/gtest.h>

#include "mtdlcu/errors.hpp"
#include "mtdlcu/fermionic_lcu.hpp"
#include "mtdlcu/verify.hpp"
#include "test_support.hpp"

namespace mtdlcu {
namespace {

MajoranaHamiltonian with_tensors(const Matrix& h_tilde, const Tensor4& g) {
  MajoranaHamiltonian maj;
  maj.n_orbitals = static_cast<int>(h_tilde.rows());
  maj.h_tilde = h_tilde;
  maj.g = g;
  return maj;
}

Tensor4 outer(const Matrix& a, const Matrix& b) {
  const int n = static_cast<int>(a.rows());
  Tensor4 g(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) g(i, j, k, l) = a(i, j) * b(k, l);
  return g;
}

Tensor4 factor_sum(const std::vector<CholeskyFactor>& fs, int n) {
  Tensor4 g(n);
  for (const auto& f : fs) g += outer(f.w, f.w);
  return g;
}

TEST(OneBody, ScaledIdentity) {
  OneBodyFragment ob = diagonalize_one_body(with_tensors(2.0 * Matrix::Identity(2, 2), Tensor4(2)));
  EXPECT_NEAR(ob.eigenvalues(0), 1.0, 1e-14);
  EXPECT_NEAR(ob.eigenvalues(1), 1.0, 1e-14);
  EXPECT_NEAR(ob.one_norm(), 4.0, 1e-14);
}

TEST(OneBody, OppositeEigenvalues) {
  const double a = 0.37;
  Matrix h(2, 2);
  h << 0.0, a, a, 0.0;  // h~/2 has eigenvalues +-a/2
  OneBodyFragment ob = diagonalize_one_body(with_tensors(2.0 * h, Tensor4(2)));
  EXPECT_NEAR(ob.one_norm(), 4.0 * a, 1e-14);
}

TEST(OneBody, H2Residual) {
  MajoranaHamiltonian maj = build_majorana(testing::load_fixture("h2"));
  OneBodyFragment ob = diagonalize_one_body(maj);
  Matrix back = ob.rotation * ob.eigenvalues.asDiagonal() * ob.rotation.transpose();
  EXPECT_LT((back - maj.h_tilde / 2.0).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(OneBody, FragmentsReconstruct) {
  Matrix h = testing::random_symmetric_matrix(3, 5);
  MajoranaHamiltonian maj = with_tensors(h, Tensor4(3));
  LcuDecomposition lcu;
  lcu.n_orbitals = 3;
  append_one_body_fragments(diagonalize_one_body(maj), lcu);
  lcu.one_norm = lcu.fragment_weight_sum();
  EXPECT_EQ(lcu.fragments.size(), 6u);
  EXPECT_LT(verify_reconstruction(lcu, maj), 1e-12);
  EXPECT_NEAR(lcu.one_norm, diagonalize_one_body(maj).one_norm(), 1e-14);
}

TEST(RotatedMajorana, UnitaryHermitianInvolution) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    Vector u = testing::random_orthogonal(3, seed).col(0);
    for (int flavor = 0; flavor < 2; ++flavor) {
      RotatedMajorana q = rotated_majorana(u, Spin::kBeta, flavor);
      CMatrix m = dense_matrix(majorana_sum(q, 3));
      CMatrix id = CMatrix::Identity(m.rows(), m.cols());
      EXPECT_LT((m * m - id).cwiseAbs().maxCoeff(), 1e-12);
      EXPECT_LT((m - m.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
      EXPECT_EQ(q.angles.size(), 2u);
    }
  }
}

TEST(Cholesky, RankOneSeparable) {
  Matrix w = testing::random_symmetric_matrix(3, 11);
  std::vector<CholeskyFactor> fs = pivoted_cholesky(outer(w, w));
  ASSERT_EQ(fs.size(), 1u);
  const double sign = fs[0].w(0, 0) * w(0, 0) >= 0.0 ? 1.0 : -1.0;
  EXPECT_LT((sign * fs[0].w - w).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Cholesky, ZeroTensor) {
  Matrix h = testing::random_symmetric_matrix(2, 3);
  MajoranaHamiltonian maj = with_tensors(h, Tensor4(2));
  SfResult sf = cholesky_sf(maj);
  EXPECT_TRUE(sf.factors.empty());
  EXPECT_NEAR(sf.lcu.one_norm, diagonalize_one_body(maj).one_norm(), 1e-14);
}

TEST(Cholesky, H2RankBoundedByPairMatrix) {
  MajoranaHamiltonian maj = build_majorana(testing::load_fixture("h2"));
  Eigen::SelfAdjointEigenSolver<Matrix> es(maj.g.pair_matrix());
  int rank = 0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) rank += es.eigenvalues()(i) > 1e-10 ? 1 : 0;
  std::vector<CholeskyFactor> fs = pivoted_cholesky(maj.g);
  EXPECT_LE(static_cast<int>(fs.size()), 3);
  EXPECT_LE(static_cast<int>(fs.size()), rank);
  EXPECT_LT((factor_sum(fs, 2) - maj.g).squared_norm(), 1e-6);
}

TEST(Cholesky, FactorsSymmetric) {
  Tensor4 g = testing::random_psd_tensor(4, 5, 9);
  for (const auto& f : pivoted_cholesky(g, 1e-14)) {
    EXPECT_LT((f.w - f.w.transpose()).cwiseAbs().maxCoeff(), 1e-14);
  }
  EXPECT_LT((factor_sum(pivoted_cholesky(g, 1e-14), 4) - g).squared_norm(), 1e-14);
}

TEST(Cholesky, RejectsIndefinite) {
  Matrix w = testing::random_symmetric_matrix(2, 4);
  Tensor4 g = outer(w, w);
  g *= -1.0;
  EXPECT_THROW(pivoted_cholesky(g), DataError);
}

TEST(DoubleFactorization, IdentityFactorWeight) {
  const int n = 3;
  std::vector<CholeskyFactor> fs(1);
  fs[0].w = Matrix::Identity(n, n);
  MajoranaHamiltonian maj = with_tensors(Matrix::Zero(n, n), outer(fs[0].w, fs[0].w));
  LcuDecomposition df = double_factorize(maj, fs);
  ASSERT_EQ(df.fragments.size(), 1u);
  EXPECT_NEAR(df.fragments[0].weight, n * n / 2.0, 1e-14);
}

TEST(DoubleFactorization, NeverAboveSingleFactorization) {
  for (const char* name : {"h2", "lih", "hchain_04"}) {
    MajoranaHamiltonian maj = build_majorana(testing::load_fixture(name));
    SfResult sf = cholesky_sf(maj);
    LcuDecomposition df = double_factorize(maj, sf.factors);
    EXPECT_LE(df.one_norm, sf.lcu.one_norm + 1e-9) << name;
  }
}

TEST(Factorizations, DenseReconstructionSmallFixtures) {
  for (const char* name : {"h2", "hchain_02", "hchain_04"}) {
    MajoranaHamiltonian maj = build_majorana(testing::load_fixture(name));
    SfResult sf = cholesky_sf(maj);
    LcuDecomposition df = double_factorize(maj, sf.factors);
    CsaResult csa = csa_decompose(maj, 4);
    for (const LcuDecomposition* lcu : {&sf.lcu, &df, &csa.lcu}) {
      EXPECT_LE(verify_reconstruction(*lcu, maj), std::max(1e-6, lcu->metadata.truncation_loss))
          << name << " " << lcu->method;
      EXPECT_NEAR(lcu->one_norm, lcu->fragment_weight_sum(), 1e-12);
    }
  }
}

TEST(Factorizations, RandomPsdReconstruction) {
  Matrix h = testing::random_symmetric_matrix(3, 21, 0.5);
  MajoranaHamiltonian maj = with_tensors(h, testing::random_psd_tensor(3, 3, 22));
  maj.h0 = 0.25;
  SfResult sf = cholesky_sf(maj, 1e-14);
  LcuDecomposition df = double_factorize(maj, sf.factors);
  EXPECT_LT(verify_reconstruction(sf.lcu, maj), 1e-9);
  EXPECT_LT(verify_reconstruction(df, maj), 1e-9);
}

TEST(Factorizations, TruncationMonotone) {
  MajoranaHamiltonian maj = build_majorana(testing::load_fixture("lih"));
  double previous = std::numeric_limits<double>::infinity();
  for (double tol : {1e-1, 1e-2, 1e-3, 1e-4, 1e-6, 1e-8}) {
    SfResult sf = cholesky_sf(maj, tol);
    const double dev = verify_reconstruction(sf.lcu, maj);
    EXPECT_LE(dev, previous + 1e-12) << tol;
    previous = dev;
  }
}

TEST(Csa, DoubleFactorizedTensorInOneFragment) {
  const int n = 3;
  Matrix u = testing::random_orthogonal(n, 31);
  Vector mu(n);
  mu << 0.9, -0.4, 0.2;
  Matrix w = u * mu.asDiagonal() * u.transpose();
  MajoranaHamiltonian maj = with_tensors(Matrix::Zero(n, n), outer(w, w));
  CsaBudget budget;
  budget.tol = 1e-12;
  CsaResult r = csa_decompose(maj, 3, budget);
  ASSERT_GE(r.fragments.size(), 1u);
  EXPECT_LT(r.residual_sq.front(), 1e-8);
  EXPECT_LT((csa_fragment_tensor(r.fragments.front()) - maj.g).squared_norm(), 1e-8);
  // Tensor weights are mu_a mu_b up to a relabelling, so their absolute sum is fixed.
  EXPECT_NEAR(4.0 * r.fragments.front().lambda.cwiseAbs().sum(), std::pow(mu.cwiseAbs().sum(), 2), 1e-6);
}

TEST(Csa, ZeroTensorGivesNoFragments) {
  MajoranaHamiltonian maj = with_tensors(testing::random_symmetric_matrix(2, 1), Tensor4(2));
  CsaResult r = csa_decompose(maj, 3);
  EXPECT_TRUE(r.fragments.empty());
  EXPECT_TRUE(r.lcu.fragments.size() == 4u);
}

TEST(Csa, H2TwoFragments) {
  MajoranaHamiltonian maj = build_majorana(testing::load_fixture("h2"));
  CsaResult r = csa_decompose(maj, 2);
  ASSERT_FALSE(r.residual_sq.empty());
  EXPECT_LT(r.residual_sq.back(), 1e-6);
  EXPECT_LE(verify_reconstruction(r.lcu, maj), std::max(1e-6, r.lcu.metadata.truncation_loss));
}

TEST(Csa, ResidualNonIncreasing) {
  MajoranaHamiltonian maj = build_majorana(testing::load_fixture("lih"));
  CsaResult r = csa_decompose(maj, 4);
  double previous = maj.g.squared_norm();
  for (double v : r.residual_sq) {
    EXPECT_LE(v, previous + 1e-12);
    previous = v;
  }
}

TEST(Csa, RejectsZeroFragments) {
  MajoranaHamiltonian maj = build_majorana(testing::load_fixture("h2"));
  EXPECT_THROW(csa_decompose(maj, 0), std::invalid_argument);
}

}  // namespace
}  // namespace mtdlcu
