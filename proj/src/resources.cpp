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

#include "mtdlcu/resources.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "mtdlcu/errors.hpp"

namespace mtdlcu {

BitHelpers bit_helpers(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("bit helpers need n >= 1");
  BitHelpers h;
  h.k = static_cast<int>(std::bit_width(n)) - 1;
  h.b = std::has_single_bit(n) ? h.k : h.k + 1;
  h.l = static_cast<int>(std::ceil(std::log2(static_cast<double>(n) / std::ldexp(1.0, h.k))));
  return h;
}

int mu_bits(std::uint64_t n, double eps, bool strict) {
  if (n == 0 || !(eps > 0.0)) throw std::invalid_argument("mu needs n >= 1 and eps > 0");
  const double x = strict ? static_cast<double>(n) * eps : static_cast<double>(n) / eps;
  return static_cast<int>(std::ceil(std::log2(x)));
}

int beta_bits(int n_orbitals, double lambda, double eps) {
  if (n_orbitals < 1 || !(lambda > 0.0) || !(eps > 0.0)) {
    throw std::invalid_argument("beta needs N >= 1, lambda > 0 and eps > 0");
  }
  return static_cast<int>(std::ceil(5.652 + std::log2(n_orbitals * lambda / eps)));
}

double rz_t_cost(double eps) {
  if (!(eps > 0.0) || eps >= kRzWindow) throw std::domain_error("R_Z synthesis needs 0 < eps < 0.016");
  return 3.067 * std::log2(1.0 / eps) + 9.678;
}

CircuitCost prep_generic_cost(std::uint64_t k, int mu, const BitHelpers& h, bool controlled) {
  if (k == 0) throw std::invalid_argument("PREP needs K >= 1");
  const std::int64_t kk = static_cast<std::int64_t>(k);
  CircuitCost c;
  c.t = 8 * h.l + 4 * kk + 8 * mu + 7 * h.b - 8;
  c.qubits = h.b + 2 * mu + 3;
  c.reusable = std::max({2 * mu - 1, h.b - 1, h.l});
  c.rz = 2;
  if (controlled) {
    c.t += 4 + 2 * h.k + 2 * h.l;
    c.qubits += 1;
    c.reusable += 1;
  }
  return c;
}

CircuitCost prep_generic_cost(std::uint64_t k, double eps_coeff, bool controlled, bool strict_mu) {
  return prep_generic_cost(k, mu_bits(k, eps_coeff, strict_mu), bit_helpers(k), controlled);
}

CircuitCost sparse_prep_cost(std::uint64_t s, int n, double eps_coeff, bool strict_mu) {
  const BitHelpers hs = bit_helpers(s);
  const BitHelpers hn = bit_helpers(static_cast<std::uint64_t>(n));
  const int mu = mu_bits(s, eps_coeff, strict_mu);
  CircuitCost c;
  c.t = 8 * hs.l + 4 * static_cast<std::int64_t>(s) + 8 * mu + 56 * hn.b - 1;
  c.qubits = hs.b + 8 * hn.b + 2 * mu + 8;
  c.reusable = std::max({hs.l, hs.b - 1, 2 * mu - 1});
  c.rz = 2;
  return c;
}

CircuitCost sparse_sel_cost(int n) {
  const BitHelpers hn = bit_helpers(static_cast<std::uint64_t>(n));
  const BitHelpers h2n = bit_helpers(2 * static_cast<std::uint64_t>(n));
  return {32 * n - 16, 4 * hn.b + 4 + 2 * n, h2n.b + 1, 0};
}

CircuitCost ac_sel_cost(const std::vector<int>& sizes, int n) {
  if (sizes.empty()) throw std::invalid_argument("AC costs need at least one group");
  const std::int64_t g = static_cast<std::int64_t>(sizes.size());
  const std::int64_t total = std::accumulate(sizes.begin(), sizes.end(), std::int64_t{0});
  const BitHelpers hg = bit_helpers(static_cast<std::uint64_t>(g));
  return {4 * g - 4, 2 * n + hg.b + 1, hg.b, 2 * total - 2 * g};
}

CircuitCost df_sel_cost(std::uint64_t l, int n, int mu_n, int beta, const BitHelpers& hn, const BitHelpers& hl) {
  const std::int64_t ll = static_cast<std::int64_t>(l);
  CircuitCost c;
  c.t = ll * (8 + 40 * hn.l + 16 * n + 32 * mu_n + 28 * hn.b + 8 * hn.k) + n * (28 * beta - 48) + 4 * hn.b - 20;
  c.qubits = 6 + hl.b + 2 * n + hn.b + 2 * mu_n;
  c.reusable = 7 + beta + 3 * hn.b + hl.b + std::max({2 * mu_n - 1, hn.b - 1, hn.l});
  c.rz = 8 * ll;
  return c;
}

CircuitCost df_sel_cost(std::uint64_t l, int n, double lambda, const CostParams& p) {
  const std::uint64_t nn = static_cast<std::uint64_t>(n);
  return df_sel_cost(l, n, mu_bits(nn, p.eps_coeff, p.strict_mu), beta_bits(n, lambda, p.eps_rot), bit_helpers(nn),
                     bit_helpers(l));
}

CircuitCost l4_sel_cost(std::uint64_t w, int n, int beta) {
  const BitHelpers hw = bit_helpers(w);
  return {n * (112 * static_cast<std::int64_t>(beta) - 196) + 8 * static_cast<std::int64_t>(w) - 4,
          4 + hw.b + 2 * n + 4 * beta, hw.b, 0};
}

CircuitCost mps_prep_cost(int n, const int alpha[3], double eps_coeff, bool strict_mu) {
  const std::uint64_t dims[4] = {static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(alpha[0]),
                                 static_cast<std::uint64_t>(alpha[1]), static_cast<std::uint64_t>(alpha[2])};
  CircuitCost c;
  std::int64_t mu_sum = 0;
  for (std::uint64_t a : dims) {
    const BitHelpers h = bit_helpers(a);
    const int mu = mu_bits(a, eps_coeff, strict_mu);
    c.t += 10 * h.l + 2 * h.k + 4 * static_cast<std::int64_t>(a) + 8 * mu + 7 * h.b - 4;
    mu_sum += mu;
  }
  const BitHelpers h2 = bit_helpers(dims[2]);
  c.qubits = 13 + bit_helpers(dims[0]).b + h2.b + bit_helpers(dims[3]).b + 2 * mu_sum;
  c.reusable = 4 + h2.b + 2 * mu_bits(dims[2], eps_coeff, strict_mu);
  c.rz = 9;
  return c;
}

CircuitCost mps_sel_cost(int n, const int alpha[3], int beta) {
  const std::int64_t a1 = alpha[0], a2 = alpha[1], a3 = alpha[2];
  CircuitCost c;
  c.t = 4 * a2 * (n + 2 * a1 + 2 * a3) + n * (112 * static_cast<std::int64_t>(beta) - 192) + 8 * a1 + 4 * a3 - 24;
  c.qubits = 4 + 2 * n + beta + bit_helpers(static_cast<std::uint64_t>(n)).b +
             bit_helpers(static_cast<std::uint64_t>(a2)).b + bit_helpers(static_cast<std::uint64_t>(a3)).b;
  c.reusable = bit_helpers(static_cast<std::uint64_t>(a2 * a3)).b;
  c.rz = 0;
  return c;
}

double hardness(const CostReport& r, double lambda) {
  const double rz = r.rz_count == 0 ? 0.0 : static_cast<double>(r.rz_count) * rz_t_cost(r.params.eps_rot);
  return lambda * (static_cast<double>(r.sel.t + 2 * r.prep.t) + rz);
}

CostReport compose_report(const std::string& method, int n, double lambda, const CostParams& p,
                          const CircuitCost& prep, const CircuitCost& sel) {
  CostReport r;
  r.method = method;
  r.n_orbitals = n;
  r.lambda = lambda;
  r.params = p;
  r.prep = prep;
  r.sel = sel;
  r.t_gates = sel.t + 2 * prep.t;
  r.rz_count = sel.rz + 2 * prep.rz;
  r.rz_tgate_equiv = r.rz_count == 0 ? 0.0 : static_cast<double>(r.rz_count) * rz_t_cost(p.eps_rot);
  r.qubits_nonreusable = prep.qubits + sel.qubits;
  r.qubits_reusable = std::max(prep.reusable, sel.reusable);
  r.hardness = hardness(r, lambda);
  return r;
}

CostReport sparse_costs(std::uint64_t s, int n, double lambda, const CostParams& p) {
  return compose_report("sparse", n, lambda, p, sparse_prep_cost(s, n, p.eps_coeff, p.strict_mu), sparse_sel_cost(n));
}

CostReport ac_costs(const std::vector<int>& sizes, int n, double lambda, const CostParams& p) {
  const std::uint64_t g = sizes.size();
  return compose_report("ac", n, lambda, p, prep_generic_cost(g, p.eps_coeff, false, p.strict_mu),
                        ac_sel_cost(sizes, n));
}

CostReport df_costs(std::uint64_t l, int n, double lambda, const CostParams& p) {
  return compose_report("df", n, lambda, p, prep_generic_cost(l, p.eps_coeff, false, p.strict_mu),
                        df_sel_cost(l, n, lambda, p));
}

CostReport l4_costs(std::uint64_t w, int n, double lambda, const CostParams& p) {
  return compose_report("l4", n, lambda, p, prep_generic_cost(w, p.eps_coeff, false, p.strict_mu),
                        l4_sel_cost(w, n, beta_bits(n, lambda, p.eps_rot)));
}

CostReport l4_mps_costs(int n, const int alpha[3], double lambda, const CostParams& p) {
  return compose_report("l4-mps", n, lambda, p, mps_prep_cost(n, alpha, p.eps_coeff, p.strict_mu),
                        mps_sel_cost(n, alpha, beta_bits(n, lambda, p.eps_rot)));
}

CostParams default_precisions(double lambda, std::int64_t rz_count) {
  CostParams p;
  const double budget = 1e-3 / std::max(lambda, 1e-300);
  p.eps_coeff = budget;
  p.eps_rot = budget / static_cast<double>(std::max<std::int64_t>(1, rz_count));
  return p;
}

namespace {

bool is_pauli(const std::string& m) { return m == "pauli" || m == "oo-pauli"; }
bool is_ac(const std::string& m) { return m == "ac" || m == "oo-ac"; }
bool is_l4_flat(const std::string& m) { return m == "l4-svd" || m == "l4-cp4"; }

}  // namespace

std::optional<CostReport> estimate_costs(const LcuDecomposition& lcu, const PrecisionOverride& o) {
  const std::string& m = lcu.method;
  const int n = lcu.n_orbitals;
  const double lambda = lcu.one_norm;
  // R_Z counts do not depend on precision, so a first pass sizes the budget.
  std::int64_t rz = 0;
  CostParams probe;
  if (is_pauli(m)) {
    rz = 4;
  } else if (is_ac(m)) {
    rz = ac_sel_cost(lcu.shape.group_sizes, n).rz + 4;
  } else if (m == "df") {
    rz = 8 * static_cast<std::int64_t>(lcu.shape.factors + 1) + 4;
  } else if (is_l4_flat(m)) {
    rz = 4;
  } else if (m == "l4-mps") {
    rz = 18;
  } else {
    return std::nullopt;
  }
  CostParams p = default_precisions(lambda, rz);
  if (o.eps_coeff) p.eps_coeff = *o.eps_coeff;
  if (o.eps_rot) p.eps_rot = *o.eps_rot;
  p.strict_mu = o.strict_mu;
  CostReport r;
  if (is_pauli(m)) {
    r = sparse_costs(static_cast<std::uint64_t>(lcu.shape.sparse_terms), n, lambda, p);
  } else if (is_ac(m)) {
    r = ac_costs(lcu.shape.group_sizes, n, lambda, p);
  } else if (m == "df") {
    r = df_costs(static_cast<std::uint64_t>(lcu.shape.factors + 1), n, lambda, p);
  } else if (is_l4_flat(m)) {
    r = l4_costs(static_cast<std::uint64_t>(std::max(1, lcu.shape.weights)), n, lambda, p);
  } else {
    int alpha[3] = {std::max(1, lcu.shape.bond[0]), std::max(1, lcu.shape.bond[1]), std::max(1, lcu.shape.bond[2])};
    r = l4_mps_costs(n, alpha, lambda, p);
  }
  r.method = m;
  return r;
}

}  // namespace mtdlcu
