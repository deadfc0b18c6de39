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

// Acceptance runner. One PASS/FAIL line per criterion; indented lines carry
// the measured numbers. Usage: acceptance [c1 ... c7 | all]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "mtdlcu/fermionic_lcu.hpp"
#include "mtdlcu/integrals.hpp"
#include "mtdlcu/majorana.hpp"
#include "mtdlcu/mtd_l4.hpp"
#include "mtdlcu/qubit_lcu.hpp"
#include "mtdlcu/report.hpp"
#include "mtdlcu/resources.hpp"
#include "mtdlcu/verify.hpp"

namespace {

using namespace mtdlcu;

const std::vector<std::string> kMolecules = {"h2", "lih", "beh2", "h2o"};

// Published reference values: half range, 1-norms, Pauli T totals.
struct ReferenceRow {
  double half_range;
  std::map<std::string, double> lambda;
  int pauli_t;
};

const std::map<std::string, ReferenceRow>& reference_table() {
  static const std::map<std::string, ReferenceRow> t = {
      {"h2",
       {1.68,
        {{"pauli", 2.54}, {"oo-pauli", 2.54}, {"ac", 2.18}, {"oo-ac", 2.18}, {"df", 2.11},
         {"l4-svd", 2.54}, {"l4-mps", 3.80}},
        632}},
      {"lih",
       {7.72,
        {{"pauli", 13.7}, {"oo-pauli", 13.0}, {"ac", 10.2}, {"oo-ac", 10.2}, {"df", 9.78},
         {"l4-svd", 10.9}, {"l4-mps", 67.9}},
        1952}},
      {"beh2",
       {16.0,
        {{"pauli", 26.4}, {"oo-pauli", 25.7}, {"ac", 20.6}, {"oo-ac", 20.6}, {"df", 20.0},
         {"l4-svd", 22.7}, {"l4-mps", 144.9}},
        2144}},
      {"h2o",
       {61.5,
        {{"pauli", 89.2}, {"oo-pauli", 77.4}, {"ac", 71.2}, {"oo-ac", 70.0}, {"df", 68.9},
         {"l4-svd", 72.7}, {"l4-mps", 279.5}},
        2504}},
  };
  return t;
}

MolecularIntegrals load(const std::string& name) {
  return to_paper_convention(read_fcidump(resolve_input(name)));
}

struct Verdict {
  bool ok = true;
  void check(bool c) { ok = ok && c; }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool c1() {
  Verdict v;
  const auto t0 = std::chrono::steady_clock::now();
  int matched = 0, total = 0;
  for (const auto& mol_name : kMolecules) {
    const MolecularIntegrals mol = load(mol_name);
    const ReferenceRow& row = reference_table().at(mol_name);
    for (const auto& [method, ref] : row.lambda) {
      const Decomposed d = decompose(mol, method);
      const double rel = std::abs(d.lcu.one_norm - ref) / ref;
      const double tol = method.rfind("oo-", 0) == 0 ? 0.03 : 0.02;
      const bool ok = rel <= tol;
      matched += ok;
      ++total;
      v.check(ok);
      std::printf("  %-5s %-8s lambda %10.4f ref %8.2f rel %6.3f %s\n", mol_name.c_str(), method.c_str(),
                  d.lcu.one_norm, ref, rel, ok ? "ok" : "off");
    }
    const Decomposed cp4 = decompose(mol, "l4-cp4");
    const bool ok = cp4.lcu.metadata.residual_sq < 1e-6;
    v.check(ok);
    std::printf("  %-5s l4-cp4   lambda %10.4f rank %d residual %.3e %s\n", mol_name.c_str(), cp4.lcu.one_norm,
                cp4.lcu.shape.weights, cp4.lcu.metadata.residual_sq, ok ? "ok" : "off");
  }
  const double secs = seconds_since(t0);
  v.check(secs < 300.0);
  std::printf("%s C1: reference 1-norms, %d/%d within tolerance, CP4 residuals, %.1f s\n", v.ok ? "PASS" : "FAIL",
              matched, total, secs);
  return v.ok;
}

bool c2() {
  Verdict v;
  int range_ok = 0, bound_ok = 0, bounds = 0;
  for (const auto& mol_name : kMolecules) {
    const MolecularIntegrals mol = load(mol_name);
    const SpectralRange r = spectral_range(build_majorana(mol));
    const double ref = reference_table().at(mol_name).half_range;
    const double rel = std::abs(r.half_range - ref) / ref;
    const bool ok = rel <= 0.01;
    range_ok += ok;
    v.check(ok);
    std::printf("  %-5s dE/2 %10.5f ref %6.2f rel %6.3f %s\n", mol_name.c_str(), r.half_range, ref, rel,
                ok ? "ok" : "off");
    for (const auto& method : known_methods()) {
      const Decomposed d = decompose(mol, method);
      const bool b = verify_norm_bound(d.lcu, r);
      bound_ok += b;
      ++bounds;
      v.check(b);
      if (!b) std::printf("  %-5s %-8s lambda %.6f below dE/2\n", mol_name.c_str(), method.c_str(), d.lcu.one_norm);
    }
  }
  std::printf("%s C2: dE/2 %d/4 within 1%%, norm bound %d/%d\n", v.ok ? "PASS" : "FAIL", range_ok, bound_ok, bounds);
  return v.ok;
}

bool c3() {
  Verdict v;
  int passed = 0, total = 0;
  for (const std::string mol_name : {"h2", "lih"}) {
    const MolecularIntegrals mol = load(mol_name);
    for (const auto& method : known_methods()) {
      const Decomposed d = decompose(mol, method);
      const double dev = verify_reconstruction(d.lcu, d.target);
      const double allowed = std::max(1e-6, d.lcu.metadata.truncation_loss);
      const bool ok = dev <= allowed;
      passed += ok;
      ++total;
      v.check(ok);
      std::printf("  %-5s %-8s deviation %.3e allowed %.3e %s\n", mol_name.c_str(), method.c_str(), dev, allowed,
                  ok ? "ok" : "off");
    }
  }
  std::printf("%s C3: reconstruction %d/%d (dense on H2, coefficient level on LiH)\n", v.ok ? "PASS" : "FAIL", passed,
              total);
  return v.ok;
}

bool c4() {
  Verdict v;
  int n = 0;
  auto expect = [&](const char* what, long long got, long long want) {
    ++n;
    const bool ok = got == want;
    v.check(ok);
    if (!ok) std::printf("  %s: got %lld want %lld\n", what, got, want);
  };
  // Generic PREP.
  expect("prep K=4 mu=4", prep_generic_cost(4, 4, bit_helpers(4), false).t, 54);
  expect("prep K=4 controlled", prep_generic_cost(4, 4, bit_helpers(4), true).t, 62);
  expect("prep K=1 mu=3", prep_generic_cost(1, 3, bit_helpers(1), false).t, 20);
  // Sparse.
  expect("sparse sel N=7", sparse_sel_cost(7).t, 208);
  expect("sparse sel N=2", sparse_sel_cost(2).t, 48);
  expect("sparse prep S=6 N=2", sparse_prep_cost(6, 2, std::ldexp(1.0, -10)).t, 191);
  // AC.
  expect("ac sel [3] T", ac_sel_cost({3}, 2).t, 0);
  expect("ac sel [3] rz", ac_sel_cost({3}, 2).rz, 4);
  expect("ac sel singletons rz", ac_sel_cost({1, 1, 1, 1}, 2).rz, 0);
  // DF: the worked value takes l_2 = 1; the caption definition gives l_2 = 0.
  expect("df sel printed bits", df_sel_cost(2, 2, 4, 20, BitHelpers{1, 1, 1}, bit_helpers(2)).t, 1496);
  expect("df sel caption bits", df_sel_cost(2, 2, 4, 20, bit_helpers(2), bit_helpers(2)).t, 1416);
  expect("df sel L=1", df_sel_cost(1, 2, 4, 20, bit_helpers(2), bit_helpers(1)).t, 204 + 1024 - 16);
  // L4.
  expect("l4 sel W=4", l4_sel_cost(4, 2, 20).t, 4116);
  expect("l4 sel W=1", l4_sel_cost(1, 2, 20).t, 4088 + 4);
  expect("l4 sel W=4 qubits", l4_sel_cost(4, 2, 20).qubits, 90);
  // MPS.
  const int ones[3] = {1, 1, 1};
  expect("mps sel beta=20", mps_sel_cost(2, ones, 20).t, 24 + 2 * (2240 - 192) + 8 + 4 - 24);
  expect("mps sel beta=10", mps_sel_cost(2, ones, 10).t, 24 + 2 * (1120 - 192) + 8 + 4 - 24);
  expect("mps prep rz", mps_prep_cost(2, ones, std::ldexp(1.0, -10)).rz, 9);
  // Hardness.
  CostReport r;
  r.sel.t = 100;
  r.prep.t = 50;
  expect("hardness 400", static_cast<long long>(hardness(r, 2.0)), 400);
  expect("hardness zero lambda", static_cast<long long>(hardness(r, 0.0)), 0);
  expect("hardness lambda 3", static_cast<long long>(hardness(r, 3.0)), 600);

  bool bits = true;
  for (std::uint64_t k = 1; k <= (std::uint64_t{1} << 20); ++k) {
    const BitHelpers h = bit_helpers(k);
    bits = bits && h.b == h.k + h.l;
  }
  v.check(bits);
  const bool rz_value = std::abs(rz_t_cost(std::ldexp(1.0, -10)) - 40.348) < 1e-9;
  bool rejects = true;
  for (double eps : {0.016, 0.02, 0.5}) {
    try {
      rz_t_cost(eps);
      rejects = false;
    } catch (const std::domain_error&) {
    }
  }
  v.check(rz_value && rejects);
  std::printf("  %d formula values, b=k+l to 2^20 %s, rz_t_cost(2^-10) %s, window %s\n", n, bits ? "ok" : "off",
              rz_value ? "ok" : "off", rejects ? "ok" : "off");
  std::printf("%s C4: cost formula suite\n", v.ok ? "PASS" : "FAIL");
  return v.ok;
}

bool c5() {
  Verdict v;
  for (const auto& mol_name : kMolecules) {
    const Decomposed d = decompose(load(mol_name), "pauli");
    const auto cost = estimate_costs(d.lcu);
    const int ref = reference_table().at(mol_name).pauli_t;
    // Rotations count at their synthesis cost, as in the oracle totals.
    const double total = static_cast<double>(cost->t_gates) + cost->rz_tgate_equiv;
    const double rel = std::abs(total - ref) / ref;
    const bool ok = rel <= 0.25;
    v.check(ok);
    std::printf("  %-5s T %6lld + rz %.1f = %.0f ref %5d rel %.3f eps_coeff %.3e eps_rot %.3e %s\n",
                mol_name.c_str(), static_cast<long long>(cost->t_gates), cost->rz_tgate_equiv, total, ref, rel, cost->params.eps_coeff, cost->params.eps_rot,
                ok ? "ok" : "off");
  }
  std::printf("%s C5: Pauli T counts within 25%% under default precisions\n", v.ok ? "PASS" : "FAIL");
  return v.ok;
}

bool c6() {
  Verdict v;
  const auto t0 = std::chrono::steady_clock::now();
  PipelineConfig cfg;
  cfg.inputs = {"hchain_02", "hchain_04", "hchain_06", "hchain_08", "hchain_10"};
  cfg.methods = {"pauli", "oo-pauli"};
  cfg.verify_max_orbitals = 0;
  cfg.spectrum_max_qubits = 0;
  const PipelineReport rep = run_pipeline(cfg);
  for (const auto& r : rep.rows)
    std::printf("  N=%-2d %-8s lambda %9.4f T %6lld qubits %4lld hardness %.6g\n", r.n_orbitals, r.method.c_str(),
                r.lambda, static_cast<long long>(r.cost->t_gates),
                static_cast<long long>(r.cost->qubits_nonreusable + r.cost->qubits_reusable), r.cost->hardness);
  for (const auto& f : rep.fits) {
    std::printf("  %-8s hardness alpha %.3f beta %.3f  qubits alpha %.3f beta %.3f\n", f.method.c_str(),
                f.hardness.alpha, f.hardness.beta, f.qubits->alpha, f.qubits->beta);
    if (f.method == "pauli") {
      const bool h = std::abs(f.hardness.beta - 5.59) <= 0.5;
      const bool q = std::abs(f.qubits->beta - 0.44) <= 0.15;
      std::printf("  pauli hardness beta vs 5.59 %s, qubit beta vs 0.44 %s\n", h ? "ok" : "off", q ? "ok" : "off");
      v.check(h && q);
    } else {
      const bool h = std::abs(f.hardness.beta - 2.67) <= 0.5;
      std::printf("  oo-pauli hardness beta vs 2.67 %s\n", h ? "ok" : "off");
      v.check(h);
    }
  }
  const double secs = seconds_since(t0);
  v.check(rep.fits.size() == 2 && secs < 1200.0);
  std::printf("%s C6: hydrogen-chain scaling fits, %.1f s\n", v.ok ? "PASS" : "FAIL", secs);
  return v.ok;
}

PauliSum random_pauli_sum(std::mt19937_64& rng, int nq, int terms) {
  std::normal_distribution<double> d;
  PauliSum s(nq);
  const std::uint64_t mask = (std::uint64_t{1} << nq) - 1;
  for (int t = 0; t < terms; ++t) {
    PauliWord w(nq, rng() & mask, rng() & mask);
    if (!w.is_identity()) s.add(w, d(rng));
  }
  return s;
}

Tensor4 random_symmetric_tensor(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  Tensor4 g(n);
  for (double& x : g.data()) x = d(rng);
  return symmetrize_eightfold(g);
}

bool prop_majorana() {
  for (int n = 1; n <= 3; ++n) {
    std::vector<CMatrix> g;
    for (int j = 0; j < n; ++j)
      for (int s = 0; s < 2; ++s)
        for (int m = 0; m < 2; ++m) g.push_back(dense_matrix(jordan_wigner_majorana(j, Spin(s), m, n)));
    const int dim = 1 << (2 * n);
    for (std::size_t p = 0; p < g.size(); ++p)
      for (std::size_t q = 0; q < g.size(); ++q) {
        const CMatrix ac = g[p] * g[q] + g[q] * g[p];
        const CMatrix want = (p == q ? 2.0 : 0.0) * CMatrix::Identity(dim, dim);
        if ((ac - want).cwiseAbs().maxCoeff() > 1e-14) return false;
      }
  }
  return true;
}

bool prop_ac_groups() {
  std::mt19937_64 rng(2026);
  for (int trial = 0; trial < 500; ++trial) {
    const int nq = 1 + static_cast<int>(rng() % 6);
    const PauliSum s = random_pauli_sum(rng, nq, 1 + static_cast<int>(rng() % 40));
    const LcuDecomposition lcu = sorted_insertion_ac(s);
    std::size_t members = 0;
    for (const auto& f : lcu.fragments) {
      const auto& g = std::get<AcGroup>(f.op);
      members += g.words.size();
      for (std::size_t a = 0; a < g.words.size(); ++a)
        for (std::size_t b = a + 1; b < g.words.size(); ++b)
          if (g.words[a].commutes_with(g.words[b])) return false;
    }
    if (members != hermitian_terms(s).size()) return false;
  }
  return true;
}

bool prop_givens() {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> d;
  for (int trial = 0; trial < 100; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 16);
    std::vector<double> c(m);
    double nrm = 0.0;
    for (double& x : c) {
      x = d(rng);
      nrm += x * x;
    }
    for (double& x : c) x /= std::sqrt(nrm);
    std::vector<double> back = givens_chain_coefficients(givens_chain_angles(c));
    if (m == 1) back[0] = std::copysign(back[0], c[0]);
    for (int j = 0; j < m; ++j)
      if (std::abs(back[j] - c[j]) >= 1e-10) return false;
  }
  return true;
}

bool prop_ac_matrices() {
  for (const std::string name : {"h2", "hchain_02", "hchain_04"}) {
    const MajoranaHamiltonian maj = build_majorana(load(name));
    if (2 * maj.n_orbitals > 8) continue;
    for (AcLevel level : {AcLevel::kQubit, AcLevel::kTensor}) {
      for (const auto& f : ac_lcu(maj, level).fragments) {
        const auto& g = std::get<AcGroup>(f.op);
        if ((ac_group_matrix_givens(g) - ac_group_matrix_naive(g)).cwiseAbs().maxCoeff() > 1e-9) return false;
      }
    }
  }
  return true;
}

bool prop_l4() {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Tensor4 g = random_symmetric_tensor(3, 100 + seed);
    if ((reconstruct(mps_factorize(g, 0.0).terms(), 3) - g).squared_norm() > 1e-12) return false;
    if ((reconstruct(svd_chain_factorize(g, 0.0).terms, 3) - g).squared_norm() > 1e-12) return false;
    const Cp4Factors cp = cp4_als(g);
    if ((reconstruct(cp.terms, 3) - g).squared_norm() > 1e-6) return false;
  }
  return true;
}

// Every cost formula, each size argument varied with the others fixed.
bool prop_monotone(std::vector<std::string>& failures) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> base(1, 64), step(0, 3);
  std::vector<std::pair<int, int>> pairs;
  for (int t = 0; t < 1000; ++t) {
    int a = base(rng), b = t % 2 == 0 ? a + step(rng) : base(rng);
    if (a > b) std::swap(a, b);
    pairs.emplace_back(a, b);
  }
  const double eps = 1e-3;
  using F = std::function<std::int64_t(int)>;
  const std::vector<std::pair<std::string, F>> formulas = {
      {"prep_generic(K)", [&](int k) { return prep_generic_cost(k, eps, false).t; }},
      {"prep_generic_ctl(K)", [&](int k) { return prep_generic_cost(k, eps, true).t; }},
      {"sparse_prep(S)", [&](int s) { return sparse_prep_cost(s, 4, eps).t; }},
      {"sparse_prep(N)", [&](int n) { return sparse_prep_cost(64, n, eps).t; }},
      {"sparse_sel(N)", [&](int n) { return sparse_sel_cost(n).t; }},
      {"ac_sel(G)", [&](int g) { return ac_sel_cost(std::vector<int>(g, 2), 4).t; }},
      {"ac_sel(size)", [&](int s) { return ac_sel_cost({s}, 4).t + ac_sel_cost({s}, 4).rz; }},
      {"ac_sel(N)", [&](int n) { return ac_sel_cost({2, 3}, n).t; }},
      {"df_sel(L)", [&](int l) { return df_sel_cost(l, 4, 1e-2, CostParams{}).t; }},
      {"df_sel(N)", [&](int n) { return df_sel_cost(4, n, 1e-2, CostParams{}).t; }},
      {"l4_sel(W)", [&](int w) { return l4_sel_cost(w, 4, 30).t; }},
      {"l4_sel(N)", [&](int n) { return l4_sel_cost(7, n, 30).t; }},
      {"mps_sel(alpha)", [&](int a) { const int al[3] = {a, a, a}; return mps_sel_cost(5, al, 30).t; }},
      {"mps_sel(N)", [&](int n) { const int al[3] = {3, 3, 3}; return mps_sel_cost(n, al, 30).t; }},
      {"mps_prep(alpha)", [&](int a) { const int al[3] = {a, a, a}; return mps_prep_cost(5, al, eps).t; }},
      {"mps_prep(N)", [&](int n) { const int al[3] = {3, 3, 3}; return mps_prep_cost(n, al, eps).t; }},
  };
  for (const auto& [name, f] : formulas) {
    int bad = 0;
    std::pair<int, int> example{0, 0};
    for (auto [a, b] : pairs)
      if (f(a) > f(b)) {
        if (bad++ == 0) example = {a, b};
      }
    if (bad > 0) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "%s (%d/1000, e.g. %d -> %d: %lld -> %lld)", name.c_str(), bad, example.first,
                    example.second, static_cast<long long>(f(example.first)),
                    static_cast<long long>(f(example.second)));
      failures.push_back(buf);
    }
  }
  return failures.empty();
}

bool c7() {
  Verdict v;
  auto run = [&](const char* name, bool ok) {
    v.check(ok);
    std::printf("  %-36s %s\n", name, ok ? "ok" : "off");
  };
  run("majorana anticommutation N<=3", prop_majorana());
  run("AC groups on 500 random sums", prop_ac_groups());
  run("Givens chain on 100 unit vectors", prop_givens());
  run("AC naive vs Givens matrices", prop_ac_matrices());
  run("CP4/MPS/SVD reconstruction N=3", prop_l4());
  std::vector<std::string> failures;
  run("cost monotonicity, 1000 pairs", prop_monotone(failures));
  for (const auto& f : failures) std::printf("    decreasing: %s\n", f.c_str());
  std::printf("%s C7: property suites\n", v.ok ? "PASS" : "FAIL");
  return v.ok;
}

}  // namespace

int main(int argc, char** argv) {
  if (!std::getenv("MTDLCU_FIXTURES")) setenv("MTDLCU_FIXTURES", MTDLCU_FIXTURE_DIR, 0);
  const std::map<std::string, std::function<bool()>> all = {{"c1", c1}, {"c2", c2}, {"c3", c3}, {"c4", c4},
                                                            {"c5", c5}, {"c6", c6}, {"c7", c7}};
  std::vector<std::string> which;
  for (int i = 1; i < argc; ++i) which.emplace_back(argv[i]);
  if (which.empty() || (which.size() == 1 && which[0] == "all"))
    for (const auto& [k, f] : all) which.push_back(k);
  bool ok = true;
  for (const auto& w : which) {
    auto it = all.find(w);
    if (it == all.end()) {
      std::fprintf(stderr, "unknown criterion %s\n", w.c_str());
      return 2;
    }
    try {
      ok = it->second() && ok;
    } catch (const std::exception& e) {
      std::printf("FAIL %s: %s\n", w.c_str(), e.what());
      ok = false;
    }
    std::fflush(stdout);
  }
  return ok ? 0 : 1;
}
