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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mtdlcu/lcu.hpp"

namespace mtdlcu {

/// b = ceil(log2 n), k = floor(log2 n), l = ceil(log2(n / 2^k)).
struct BitHelpers {
  int b = 0;
  int k = 0;
  int l = 0;
};

BitHelpers bit_helpers(std::uint64_t n);

/// ceil(log2(n / eps)); strict uses the printed ceil(log2(n eps)).
int mu_bits(std::uint64_t n, double eps, bool strict = false);

/// ceil(5.652 + log2(N lambda / eps)).
int beta_bits(int n_orbitals, double lambda, double eps);

inline constexpr double kRzWindow = 0.016;

/// Average T cost of one R_Z at accuracy eps, 0 < eps < 0.016.
double rz_t_cost(double eps);

struct CircuitCost {
  std::int64_t t = 0;
  std::int64_t qubits = 0;    // non-reusable
  std::int64_t reusable = 0;
  std::int64_t rz = 0;
};

struct CostParams {
  double eps_coeff = 1e-3;
  double eps_rot = 1e-3;
  bool strict_mu = false;
};

CircuitCost prep_generic_cost(std::uint64_t k, int mu, const BitHelpers& bits, bool controlled);
CircuitCost prep_generic_cost(std::uint64_t k, double eps_coeff, bool controlled, bool strict_mu = false);

CircuitCost sparse_prep_cost(std::uint64_t s, int n_orbitals, double eps_coeff, bool strict_mu = false);
CircuitCost sparse_sel_cost(int n_orbitals);

CircuitCost ac_sel_cost(const std::vector<int>& group_sizes, int n_orbitals);

CircuitCost df_sel_cost(std::uint64_t l, int n_orbitals, int mu_n, int beta, const BitHelpers& bits_n,
                        const BitHelpers& bits_l);
CircuitCost df_sel_cost(std::uint64_t l, int n_orbitals, double lambda, const CostParams& p);

CircuitCost l4_sel_cost(std::uint64_t w, int n_orbitals, int beta);

CircuitCost mps_prep_cost(int n_orbitals, const int alpha[3], double eps_coeff, bool strict_mu = false);
CircuitCost mps_sel_cost(int n_orbitals, const int alpha[3], int beta);

struct CostReport {
  std::string method;
  int n_orbitals = 0;
  double lambda = 0.0;
  CostParams params;
  CircuitCost prep;
  CircuitCost sel;
  std::int64_t t_gates = 0;  // T_SEL + 2 T_PREP
  std::int64_t rz_count = 0;  // R_Z of SEL + 2 PREP
  double rz_tgate_equiv = 0.0;
  std::int64_t qubits_nonreusable = 0;
  std::int64_t qubits_reusable = 0;
  double hardness = 0.0;
};

/// lambda (T_SEL + 2 T_PREP + rz_count rz_t_cost(eps_rot)).
double hardness(const CostReport& report, double lambda);

/// Totals for one SEL and two PREPs. Non-reusable qubits add up, the
/// reusable pool is shared.
CostReport compose_report(const std::string& method, int n_orbitals, double lambda, const CostParams& p,
                          const CircuitCost& prep, const CircuitCost& sel);

CostReport sparse_costs(std::uint64_t s, int n_orbitals, double lambda, const CostParams& p);
CostReport ac_costs(const std::vector<int>& group_sizes, int n_orbitals, double lambda, const CostParams& p);
CostReport df_costs(std::uint64_t l, int n_orbitals, double lambda, const CostParams& p);
CostReport l4_costs(std::uint64_t w, int n_orbitals, double lambda, const CostParams& p);
CostReport l4_mps_costs(int n_orbitals, const int alpha[3], double lambda, const CostParams& p);

/// eps_coeff = 1e-3 / lambda; eps_rot splits the same budget over the R_Z count.
CostParams default_precisions(double lambda, std::int64_t rz_count);

struct PrecisionOverride {
  std::optional<double> eps_coeff;
  std::optional<double> eps_rot;
  bool strict_mu = false;
};

/// Cost report for a decomposition; nullopt for methods without a circuit
/// model (sf, csa).
std::optional<CostReport> estimate_costs(const LcuDecomposition& lcu, const PrecisionOverride& o = {});

}  // namespace mtdlcu
