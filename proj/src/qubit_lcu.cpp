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

#include "mtdlcu/qubit_lcu.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "mtdlcu/errors.hpp"
#include "mtdlcu/kernels.hpp"
#include "mtdlcu/optimize.hpp"

namespace mtdlcu {

PhasedWord reflection_word(int i, int j, Spin s, int n_orbitals) {
  PhasedWord w = multiply(jordan_wigner_majorana(i, s, 0, n_orbitals),
                          jordan_wigner_majorana(j, s, 1, n_orbitals));
  w.k = (w.k + 1) % 4;  // the leading i
  return w;
}

namespace {

double sign_of(double v) { return v < 0.0 ? -1.0 : 1.0; }

// All Q_ijs words, indexed [(s * n + i) * n + j].
std::vector<PhasedWord> reflection_table(int n) {
  std::vector<PhasedWord> q(2 * n * n);
  for (int s = 0; s < 2; ++s)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) q[(s * n + i) * n + j] = reflection_word(i, j, Spin(s), n);
  return q;
}

}  // namespace

LcuDecomposition sparse_pauli_lcu(const MajoranaHamiltonian& maj, double keep_threshold) {
  const int n = maj.n_orbitals;
  LcuDecomposition lcu;
  lcu.method = "pauli";
  lcu.n_orbitals = n;
  lcu.constant = maj.h0;
  const auto q = reflection_table(n);
  std::vector<double> dropped;
  for (int s = 0; s < 2; ++s)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double v = maj.h_tilde(i, j);
        if (v == 0.0) continue;
        if (std::abs(v) < keep_threshold) {
          dropped.push_back(std::abs(v) / 2);
          continue;
        }
        const PhasedWord& w = q[(s * n + i) * n + j];
        lcu.fragments.push_back({std::abs(v) / 2, PauliTerm{w.word, sign_of(v) * w.phase()}});
      }
  for (int s = 0; s < 2; ++s)
    for (int t = 0; t < 2; ++t)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) {
              const double v = maj.g(i, j, k, l);
              if (v == 0.0) continue;
              if (std::abs(v) < keep_threshold) {
                dropped.push_back(std::abs(v) / 4);
                continue;
              }
              PhasedWord w = multiply(q[(s * n + i) * n + j], q[(t * n + k) * n + l]);
              lcu.fragments.push_back({std::abs(v) / 4, PauliTerm{w.word, sign_of(v) * w.phase()}});
            }
  lcu.one_norm = lcu.fragment_weight_sum();
  lcu.metadata.truncation_loss = kernels::serial::pairwise_sum(dropped);
  lcu.shape.sparse_terms = sparse_term_count(maj, keep_threshold);
  lcu.metadata.values["keep_threshold"] = keep_threshold;
  return lcu;
}

double pauli_tensor_norm(const Matrix& h_tilde, const Tensor4& g) {
  std::span<const double> h(h_tilde.data(), static_cast<std::size_t>(h_tilde.size()));
  return kernels::abs_sum(h) + kernels::abs_sum(g.data());
}

double pauli_tensor_norm(const MajoranaHamiltonian& maj) {
  return pauli_tensor_norm(maj.h_tilde, maj.g);
}

double spin_separated_two_body_norm(const MajoranaHamiltonian& maj) {
  const int n = maj.n_orbitals;
  std::vector<double> same;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < i; ++k)
      for (int l = 0; l < n; ++l)
        for (int j = 0; j < l; ++j) same.push_back(std::abs(maj.g(i, j, k, l) - maj.g(i, l, k, j)));
  // 1/4 * 2 opposite-spin blocks, 1/2 * 2 same-spin blocks.
  return 0.5 * kernels::abs_sum(maj.g.data()) + kernels::serial::pairwise_sum(same);
}

double qubit_pauli_norm(const MajoranaHamiltonian& maj) {
  return pauli_sum_of_hamiltonian(maj).one_norm();
}

int sparse_term_count(const MajoranaHamiltonian& maj, double threshold) {
  const int n = maj.n_orbitals;
  int s = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) s += std::abs(maj.h_tilde(i, j)) >= threshold;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = k; l < n; ++l) {
          if (i > k || (i == k && j > l)) continue;
          s += std::abs(maj.g(i, j, k, l)) >= threshold;
        }
  return s;
}

std::vector<HermitianTerm> hermitian_terms(const PauliSum& op, double tol) {
  std::vector<HermitianTerm> out;
  for (const auto& [w, c] : op.terms()) {
    if (w.is_identity()) continue;
    if (std::abs(c.imag()) > tol) throw DataError("PauliSum is not Hermitian: " + w.str());
    out.push_back({w, c.real()});
  }
  return out;
}

std::vector<HermitianTerm> tensor_level_terms(const MajoranaHamiltonian& maj, double keep_threshold) {
  const int n = maj.n_orbitals;
  const auto q = reflection_table(n);
  std::vector<HermitianTerm> out;
  for (int s = 0; s < 2; ++s)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double v = maj.h_tilde(i, j);
        if (std::abs(v) < keep_threshold || v == 0.0) continue;
        const PhasedWord& w = q[(s * n + i) * n + j];
        out.push_back({w.word, v / 2 * w.phase().real()});
      }
  for (int s = 0; s < 2; ++s)
    for (int t = 0; t < 2; ++t)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) {
              const double v = maj.g(i, j, k, l);
              if (std::abs(v) < keep_threshold || v == 0.0) continue;
              PhasedWord w = multiply(q[(s * n + i) * n + j], q[(t * n + k) * n + l]);
              if (w.word.is_identity() || (w.k & 1)) continue;
              out.push_back({w.word, v / 4 * w.phase().real()});
            }
  return out;
}

LcuDecomposition sorted_insertion_ac(std::vector<HermitianTerm> terms, int n_orbitals) {
  std::vector<std::size_t> order(terms.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::string> names(terms.size());
  for (std::size_t i = 0; i < terms.size(); ++i) names[i] = terms[i].word.str();
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double ma = std::abs(terms[a].coeff), mb = std::abs(terms[b].coeff);
    if (ma != mb) return ma > mb;
    return names[a] < names[b];
  });
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t idx : order) {
    if (terms[idx].coeff == 0.0) continue;
    const PauliWord& w = terms[idx].word;
    bool placed = false;
    for (auto& grp : groups) {
      bool ok = true;
      for (std::size_t m : grp) {
        if (terms[m].word.commutes_with(w)) {
          ok = false;
          break;
        }
      }
      if (ok) {
        grp.push_back(idx);
        placed = true;
        break;
      }
    }
    if (!placed) groups.push_back({idx});
  }
  LcuDecomposition lcu;
  lcu.method = "ac";
  lcu.n_orbitals = n_orbitals;
  for (const auto& grp : groups) {
    AcGroup g;
    double sq = 0.0;
    for (std::size_t m : grp) {
      g.words.push_back(terms[m].word);
      g.coefficients.push_back(terms[m].coeff);
      sq += terms[m].coeff * terms[m].coeff;
    }
    g.norm = std::sqrt(sq);
    std::vector<double> c(g.coefficients.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = g.coefficients[i] / g.norm;
    g.angles = givens_chain_angles(c);
    lcu.shape.group_sizes.push_back(static_cast<int>(grp.size()));
    const double w = g.norm;
    lcu.fragments.push_back({w, std::move(g)});
  }
  lcu.one_norm = lcu.fragment_weight_sum();
  return lcu;
}

LcuDecomposition sorted_insertion_ac(const PauliSum& op) {
  LcuDecomposition lcu = sorted_insertion_ac(hermitian_terms(op), op.n_qubits() / 2);
  lcu.constant = op.coefficient(PauliWord::identity(op.n_qubits())).real();
  return lcu;
}

LcuDecomposition ac_lcu(const MajoranaHamiltonian& maj, AcLevel level) {
  if (level == AcLevel::kQubit) {
    LcuDecomposition lcu = sorted_insertion_ac(pauli_sum_of_hamiltonian(maj));
    lcu.metadata.values["tensor_level"] = 0.0;
    return lcu;
  }
  // Tensor level: the identity-valued Q^2 terms join the constant and the
  // threshold is zero so the decomposition is exact.
  const int n = maj.n_orbitals;
  LcuDecomposition lcu = sorted_insertion_ac(tensor_level_terms(maj, 0.0), n);
  double c = maj.h0;
  const auto q = reflection_table(n);
  for (int s = 0; s < 2; ++s)
    for (int t = 0; t < 2; ++t)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          PhasedWord w = multiply(q[(s * n + i) * n + j], q[(t * n + i) * n + j]);
          if (w.word.is_identity()) c += maj.g(i, j, i, j) / 4 * w.phase().real();
        }
  lcu.constant = c;
  lcu.metadata.values["tensor_level"] = 1.0;
  return lcu;
}

std::vector<double> givens_chain_angles(const std::vector<double>& c) {
  const std::size_t m = c.size();
  if (m == 0) throw std::invalid_argument("empty coefficient vector");
  double nrm = 0.0;
  for (double v : c) nrm += v * v;
  if (std::abs(std::sqrt(nrm) - 1.0) > 1e-10) throw NumericError("coefficient vector is not normalized");
  std::vector<double> theta(m - 1, 0.0);
  // tail_j = prod_{i<j} sin(2 theta_i) equals the norm of c_j..c_J; the
  // suffix norm is the stable way to get it.
  std::vector<double> suffix(m + 1, 0.0);
  for (std::size_t j = m; j-- > 0;) suffix[j] = suffix[j + 1] + c[j] * c[j];
  for (std::size_t j = 0; j + 1 < m; ++j) {
    const double tail = std::sqrt(suffix[j]);
    if (tail < 1e-14) break;  // remaining components vanish
    double arg = c[j] / tail;
    if (arg > 1.0 + 1e-9 || arg < -1.0 - 1e-9) throw NumericError("Givens recursion left [-1, 1]");
    arg = std::clamp(arg, -1.0, 1.0);
    double t = 0.5 * std::acos(arg);
    if (j + 2 == m && c[m - 1] < 0.0) t = -t;
    theta[j] = t;
  }
  return theta;
}

std::vector<double> givens_chain_coefficients(const std::vector<double>& angles) {
  std::vector<double> c(angles.size() + 1, 0.0);
  double tail = 1.0;
  for (std::size_t j = 0; j < angles.size(); ++j) {
    c[j] = tail * std::cos(2.0 * angles[j]);
    tail *= std::sin(2.0 * angles[j]);
  }
  c.back() = tail;
  return c;
}

std::vector<double> naive_ac_phases(const AcGroup& group) {
  std::vector<double> phi;
  double run = 0.0;
  for (double d : group.coefficients) {
    run += d * d;
    if (run == 0.0) throw NumericError("zero running norm in AC group");
    phi.push_back(0.5 * std::asin(std::clamp(d / std::sqrt(run), -1.0, 1.0)));
  }
  return phi;
}

PauliSum ac_group_operator(const AcGroup& group) {
  const int nq = group.words.empty() ? 0 : group.words.front().n_qubits();
  PauliSum s(nq);
  for (std::size_t i = 0; i < group.words.size(); ++i) {
    s.add(group.words[i], group.coefficients[i] / group.norm);
  }
  return s;
}

CMatrix ac_group_matrix_givens(const AcGroup& group) {
  const int nq = group.words.front().n_qubits();
  const int dim = 1 << nq;
  std::vector<SparseCMatrix> p;
  for (const auto& w : group.words) p.push_back(sparse_operator(w));
  SparseCMatrix id(dim, dim);
  id.setIdentity();
  CMatrix v = CMatrix::Identity(dim, dim);
  for (std::size_t j = 0; j < group.angles.size(); ++j) {
    const double t = group.angles[j];
    SparseCMatrix r = std::cos(t) * id + std::sin(t) * SparseCMatrix(p[j + 1] * p[j]);
    v = r * v;
  }
  // A one-word chain has no angles; its sign rides on the word.
  const double lead = group.words.size() == 1 && group.coefficients[0] < 0.0 ? -1.0 : 1.0;
  CMatrix vp = v * p[0];
  return lead * (vp * v.adjoint());
}

CMatrix ac_group_matrix_naive(const AcGroup& group) {
  const int nq = group.words.front().n_qubits();
  const int dim = 1 << nq;
  const std::vector<double> phi = naive_ac_phases(group);
  SparseCMatrix id(dim, dim);
  id.setIdentity();
  auto expo = [&](std::size_t q) {
    return SparseCMatrix(std::cos(phi[q]) * id + Complex(0.0, std::sin(phi[q])) * sparse_operator(group.words[q]));
  };
  CMatrix a = CMatrix::Identity(dim, dim);
  for (std::size_t q = 0; q < phi.size(); ++q) a = a * expo(q);
  for (std::size_t q = phi.size(); q-- > 0;) a = a * expo(q);
  // The ordered product equals i A_n.
  return Complex(0.0, -1.0) * a;
}

Matrix givens_product(const std::vector<double>& angles, int n) {
  Matrix u = Matrix::Identity(n, n);
  std::size_t a = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++a) {
      const double c = std::cos(angles[a]), s = std::sin(angles[a]);
      for (int r = 0; r < n; ++r) {
        const double ui = u(r, i), uj = u(r, j);
        u(r, i) = c * ui + s * uj;
        u(r, j) = -s * ui + c * uj;
      }
    }
  return u;
}

namespace {

struct RotatedTensors {
  Matrix h_tilde;
  Tensor4 g;
};

MajoranaHamiltonian rotate_majorana(const MajoranaHamiltonian& maj, const Matrix& u) {
  MajoranaHamiltonian r;
  r.n_orbitals = maj.n_orbitals;
  r.h0 = maj.h0;
  r.h_tilde = u.transpose() * maj.h_tilde * u;
  r.g = kernels::rotate_two_body(maj.g, u);
  return r;
}

double objective_value(const MajoranaHamiltonian& maj, const Matrix& u, OoObjective obj) {
  if (obj == OoObjective::kPauli) {
    return pauli_tensor_norm(u.transpose() * maj.h_tilde * u, kernels::rotate_two_body(maj.g, u));
  }
  return ac_lcu(rotate_majorana(maj, u)).one_norm;
}

struct StartResult {
  MinimizeResult m;
  int index;
};

}  // namespace

OoResult orbital_optimize(const MolecularIntegrals& mol, OoObjective objective, const OoBudget& budget) {
  const int n = mol.n_orbitals;
  if (n < 2) throw std::invalid_argument("orbital optimization needs N >= 2");
  const MajoranaHamiltonian maj = build_majorana(mol);
  const std::size_t n_angles = static_cast<std::size_t>(n) * (n - 1) / 2;
  OoResult out;
  out.initial_norm = objective_value(maj, Matrix::Identity(n, n), objective);

  auto pauli_f = [&](const std::vector<double>& th) {
    return objective_value(maj, givens_product(th, n), OoObjective::kPauli);
  };

  // Stage 1: Pauli objective from the identity and seeded random starts.
  std::mt19937_64 rng(budget.seed);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  MinimizeResult best;
  best.f = std::numeric_limits<double>::infinity();
  bool all_converged = true;
  int evaluations = 0;
  for (int start = 0; start <= budget.restarts; ++start) {
    std::vector<double> x0(n_angles, 0.0);
    if (start > 0) {
      for (double& v : x0) v = angle(rng);
    }
    MinimizeResult r = powell_minimize(pauli_f, x0, budget.max_evaluations, budget.rel_tol);
    evaluations += r.evaluations;
    all_converged = all_converged && r.converged;
    if (r.f < best.f) best = r;  // strict: ties keep the earlier start
  }

  std::vector<double> theta = best.x;
  double value = best.f;
  if (objective == OoObjective::kAc) {
    auto ac_f = [&](const std::vector<double>& th) {
      return objective_value(maj, givens_product(th, n), OoObjective::kAc);
    };
    value = ac_f(theta);
    ++evaluations;
    if (budget.ac_evaluations > 0) {
      MinimizeResult r = powell_minimize(ac_f, theta, budget.ac_evaluations, budget.rel_tol, 0.05);
      evaluations += r.evaluations;
      all_converged = all_converged && r.converged;
      if (r.f < value) {
        value = r.f;
        theta = r.x;
      }
    }
  }
  if (!(value <= out.initial_norm)) {
    theta.assign(n_angles, 0.0);
    value = out.initial_norm;
  }
  out.rotation.angles = theta;
  out.rotation.u = givens_product(theta, n);
  out.rotated = rotate_orbitals(mol, out.rotation.u);
  out.final_norm = value;
  out.converged = all_converged;
  out.evaluations = evaluations;
  return out;
}

}  // namespace mtdlcu
