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

#include <fstream>
#include <sstream>

#include "mtdlcu/errors.hpp"
#include "mtdlcu/integrals.hpp"
#include "test_support.hpp"

namespace mtdlcu {
namespace {

RawFcidump parse_text(const std::string& s) {
  std::istringstream in(s);
  return parse_fcidump(in);
}

TEST(Fcidump, ConstantOnly) {
  RawFcidump raw = parse_text(" &FCI NORB=2, NELEC=2, MS2=0 &END\n0.7137 0 0 0 0\n");
  EXPECT_EQ(raw.norb, 2);
  EXPECT_DOUBLE_EQ(raw.constant, 0.7137);
  ExpandedFcidump d = expand(raw);
  EXPECT_EQ(d.t.cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(d.eri.max_abs(), 0.0);
}

TEST(Fcidump, SlashTerminatedHeader) {
  RawFcidump raw = parse_text("&FCI NORB=1,\n/\n0.5 1 1 1 1\n");
  EXPECT_EQ(raw.norb, 1);
  ASSERT_EQ(raw.entries.size(), 1u);
}

TEST(Fcidump, IndexOutOfRange) {
  try {
    parse_text(" &FCI NORB=2,\n &END\n1.0 3 1 1 1\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
  }
}

TEST(Fcidump, NonNumericValue) {
  try {
    parse_text(" &FCI NORB=2,\n &END\n0.1 1 1 1 1\nabc 1 1 0 0\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4);
  }
}

TEST(Fcidump, MalformedHeader) {
  EXPECT_THROW(parse_text("0.1 1 1 1 1\n"), ParseError);
  EXPECT_THROW(parse_text(" &FCI NELEC=2,\n &END\n"), ParseError);
  EXPECT_THROW(parse_text(" &FCI NORB=2,\n"), ParseError);
}

TEST(Fcidump, RejectsUnrestricted) {
  EXPECT_THROW(parse_text(" &FCI NORB=2, UHF=.TRUE., &END\n"), ParseError);
  EXPECT_NO_THROW(parse_text(" &FCI NORB=2, UHF=.FALSE., &END\n"));
}

TEST(Fcidump, ConflictingSymmetryPartners) {
  RawFcidump raw = parse_text(" &FCI NORB=2 &END\n0.5 1 2 1 1\n0.6 2 1 1 1\n");
  EXPECT_THROW(to_paper_convention(raw), DataError);
}

TEST(Fcidump, FortranExponent) {
  RawFcidump raw = parse_text(" &FCI NORB=1 &END\n1.5D-01 1 1 1 1\n");
  EXPECT_DOUBLE_EQ(raw.entries[0].value, 0.15);
}

TEST(Convention, IdentityOneBody) {
  RawFcidump raw = parse_text(" &FCI NORB=2 &END\n1.0 1 1 0 0\n1.0 2 2 0 0\n");
  MolecularIntegrals mol = to_paper_convention(raw);
  EXPECT_TRUE(mol.one_body.isApprox(Matrix::Identity(2, 2)));
  EXPECT_EQ(mol.two_body.max_abs(), 0.0);
}

TEST(Convention, SingleOrbital) {
  const double c = 0.625;
  RawFcidump raw = parse_text(" &FCI NORB=1 &END\n0.625 1 1 1 1\n");
  MolecularIntegrals mol = to_paper_convention(raw);
  EXPECT_DOUBLE_EQ(mol.two_body(0, 0, 0, 0), c / 2);
  EXPECT_DOUBLE_EQ(mol.one_body(0, 0), -c / 2);
}

// Reference text exported by the fixture generator directly from the SCF
// object: "t i j value" and "v i j k l value" with full (ij|kl).
struct Reference {
  int norb = 0;
  double core = 0.0;
  Matrix t;
  Tensor4 eri;
};

Reference read_reference(const std::string& name) {
  std::ifstream in(testing::fixture_path(name + ".reference.txt"));
  Reference r;
  std::string tag;
  while (in >> tag) {
    if (tag == "norb") {
      in >> r.norb;
      r.t = Matrix::Zero(r.norb, r.norb);
      r.eri = Tensor4(r.norb);
    } else if (tag == "core") {
      in >> r.core;
    } else if (tag == "t") {
      int i, j;
      double v;
      in >> i >> j >> v;
      r.t(i - 1, j - 1) = v;
    } else if (tag == "v") {
      int i, j, k, l;
      double v;
      in >> i >> j >> k >> l >> v;
      r.eri(i - 1, j - 1, k - 1, l - 1) = v;
    }
  }
  return r;
}

class ReferenceDump : public ::testing::TestWithParam<std::string> {};

TEST_P(ReferenceDump, MatchesExport) {
  Reference ref = read_reference(GetParam());
  ExpandedFcidump d = expand(read_fcidump(testing::fixture_path(GetParam() + ".fcidump")));
  ASSERT_EQ(d.norb, ref.norb);
  EXPECT_NEAR(d.constant, ref.core, 1e-14);
  EXPECT_LT((d.t - ref.t).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT((d.eri - ref.eri).max_abs(), 1e-14);
}

INSTANTIATE_TEST_SUITE_P(Fixtures, ReferenceDump, ::testing::Values("h2", "lih"));

TEST(Convention, RoundTrip) {
  for (const char* name : {"h2", "lih", "h2o"}) {
    MolecularIntegrals mol = testing::load_fixture(name);
    std::stringstream ss;
    RawFcidump raw = from_paper_convention(mol);
    write_fcidump(ss, raw);
    MolecularIntegrals back = to_paper_convention(parse_fcidump(ss));
    EXPECT_LT((back.one_body - mol.one_body).cwiseAbs().maxCoeff(), 1e-12) << name;
    EXPECT_LT((back.two_body - mol.two_body).max_abs(), 1e-12) << name;
    EXPECT_NEAR(back.core_energy, mol.core_energy, 1e-12);
  }
}

TEST(Convention, FixturesSatisfyInvariants) {
  for (const char* name : {"h2", "lih", "beh2", "h2o", "hchain_10"}) {
    EXPECT_NO_THROW(testing::load_fixture(name).validate()) << name;
  }
}

TEST(Symmetrize, Idempotent) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> d;
  Tensor4 g(3);
  for (double& v : g.data()) v = d(rng);
  Tensor4 once = symmetrize_eightfold(g);
  Tensor4 twice = symmetrize_eightfold(once);
  EXPECT_LT((once - twice).max_abs(), 1e-15);
}

TEST(Rotate, MatchesNaiveContraction) {
  const int n = 3;
  Tensor4 g = testing::random_symmetric_tensor(n, 11);
  Matrix u = testing::random_orthogonal(n, 12);
  MolecularIntegrals mol{n, 0.0, testing::random_symmetric_matrix(n, 13), g};
  MolecularIntegrals r = rotate_orbitals(mol, u);
  Tensor4 ref(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q)
              for (int s = 0; s < n; ++s)
                for (int t = 0; t < n; ++t)
                  ref(i, j, k, l) += u(p, i) * u(q, j) * u(s, k) * u(t, l) * g(p, q, s, t);
  EXPECT_LT((r.two_body - ref).max_abs(), 1e-12);
  EXPECT_LT((r.one_body - u.transpose() * mol.one_body * u).cwiseAbs().maxCoeff(), 1e-12);
}

}  // namespace
}  // namespace mtdlcu
