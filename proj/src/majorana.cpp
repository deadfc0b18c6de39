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

#include "mtdlcu/majorana.hpp"

#include <bit>
#include <cmath>

#include "mtdlcu/errors.hpp"

namespace mtdlcu {

MajoranaHamiltonian build_majorana(const MolecularIntegrals& mol) {
  const int n = mol.n_orbitals;
  MajoranaHamiltonian maj;
  maj.n_orbitals = n;
  maj.g = mol.two_body;
  maj.h_tilde = mol.one_body;
  maj.h0 = mol.core_energy;
  for (int i = 0; i < n; ++i) {
    maj.h0 += mol.one_body(i, i);
    for (int j = 0; j < n; ++j) {
      maj.h0 += mol.two_body(i, i, j, j);
      for (int k = 0; k < n; ++k) maj.h_tilde(i, j) += 2.0 * mol.two_body(i, j, k, k);
    }
  }
  return maj;
}

PauliWord PauliWord::from_string(std::string_view s) {
  std::uint64_t x = 0, z = 0;
  int q = 0;
  for (char c : s) {
    if (c == ' ' || c == '\t') continue;
    if (q >= 64) throw std::invalid_argument("Pauli word longer than 64 qubits");
    const std::uint64_t bit = std::uint64_t{1} << q;
    switch (c) {
      case 'I': break;
      case 'X': x |= bit; break;
      case 'Y': x |= bit; z |= bit; break;
      case 'Z': z |= bit; break;
      default: throw std::invalid_argument(std::string("bad Pauli letter '") + c + "'");
    }
    ++q;
  }
  return PauliWord(q, x, z);
}

char PauliWord::letter(int q) const {
  const bool xb = (x_ >> q) & 1, zb = (z_ >> q) & 1;
  return xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I');
}

std::string PauliWord::str() const {
  std::string s;
  for (int q = 0; q < n_; ++q) s += letter(q);
  return s;
}

int PauliWord::weight() const { return std::popcount(x_ | z_); }

bool PauliWord::commutes_with(const PauliWord& o) const {
  return ((std::popcount(x_ & o.z_) + std::popcount(z_ & o.x_)) & 1) == 0;
}

Complex PhasedWord::phase() const {
  static const Complex table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return table[k & 3];
}

PhasedWord multiply(const PhasedWord& a, const PhasedWord& b) {
  const std::uint64_t x1 = a.word.x(), z1 = a.word.z(), x2 = b.word.x(), z2 = b.word.z();
  const std::uint64_t x3 = x1 ^ x2, z3 = z1 ^ z2;
  int k = std::popcount(x1 & z1) + std::popcount(x2 & z2) + 2 * std::popcount(z1 & x2) -
          std::popcount(x3 & z3);
  k = ((k + a.k + b.k) % 4 + 4) % 4;
  return {k, PauliWord(std::max(a.word.n_qubits(), b.word.n_qubits()), x3, z3)};
}

PhasedWord multiply(const PauliWord& a, const PauliWord& b) {
  return multiply(PhasedWord{0, a}, PhasedWord{0, b});
}

PauliWord jordan_wigner_majorana(int j, Spin s, int flavor, int n_orbitals) {
  if (j < 0 || j >= n_orbitals || (flavor != 0 && flavor != 1) || n_orbitals > 32) {
    throw std::out_of_range("Majorana index out of range");
  }
  const int p = spin_orbital(j, s);
  const std::uint64_t below = (std::uint64_t{1} << p) - 1;
  const std::uint64_t bit = std::uint64_t{1} << p;
  return PauliWord(2 * n_orbitals, bit, below | (flavor == 1 ? bit : 0));
}

void PauliSum::add(const PauliWord& w, Complex c) {
  if (c == Complex(0.0)) return;
  terms_[w] += c;
}

void PauliSum::prune(double tol) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    it = std::abs(it->second) < tol ? terms_.erase(it) : std::next(it);
  }
}

Complex PauliSum::coefficient(const PauliWord& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Complex(0.0) : it->second;
}

double PauliSum::one_norm() const {
  std::vector<double> a;
  a.reserve(terms_.size());
  for (const auto& [w, c] : terms_) {
    if (!w.is_identity()) a.push_back(std::abs(c));
  }
  return kernels::serial::pairwise_sum(a);
}

PauliSum PauliSum::operator+(const PauliSum& o) const {
  PauliSum r = *this;
  r.n_ = std::max(n_, o.n_);
  for (const auto& [w, c] : o.terms_) r.add(w, c);
  return r;
}

PauliSum PauliSum::operator-(const PauliSum& o) const { return *this + o.scaled(-1.0); }

PauliSum PauliSum::operator*(const PauliSum& o) const {
  PauliSum r(std::max(n_, o.n_));
  for (const auto& [w1, c1] : terms_)
    for (const auto& [w2, c2] : o.terms_) r.add(multiply(w1, w2), c1 * c2);
  return r;
}

PauliSum PauliSum::scaled(Complex c) const {
  PauliSum r(n_);
  for (const auto& [w, v] : terms_) r.add(w, v * c);
  return r;
}

namespace {

// Reverses the low n bits so qubit 0 becomes the most significant basis bit.
std::uint64_t to_basis_mask(std::uint64_t m, int n) {
  std::uint64_t r = 0;
  for (int q = 0; q < n; ++q) {
    if ((m >> q) & 1) r |= qubit_bit(q, n);
  }
  return r;
}

}  // namespace

std::vector<XzGroup> PauliSum::xz_groups() const {
  std::map<std::uint64_t, XzGroup> by_x;
  for (const auto& [w, c] : terms_) {
    const std::uint64_t x = to_basis_mask(w.x(), n_);
    const std::uint64_t z = to_basis_mask(w.z(), n_);
    auto& grp = by_x[x];
    grp.x = x;
    grp.z.push_back(z);
    grp.coeff.push_back(c * PhasedWord{std::popcount(w.x() & w.z()) % 4, w}.phase());
  }
  std::vector<XzGroup> out;
  for (auto& [x, g] : by_x) out.push_back(std::move(g));
  return out;
}

PauliSum pauli_sum_of_hamiltonian(const MajoranaHamiltonian& maj) {
  const int n = maj.n_orbitals;
  if (n > kPauliExpansionMaxOrbitals) {
    throw GuardError("full Pauli expansion limited to N <= " +
                     std::to_string(kPauliExpansionMaxOrbitals));
  }
  PauliSum out(2 * n);
  out.add(PauliWord::identity(2 * n), maj.h0);
  // bil[s][i][j] = g_{i s 0} g_{j s 1}
  std::vector<PhasedWord> bil(2 * n * n);
  for (int s = 0; s < 2; ++s)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        bil[(s * n + i) * n + j] =
            multiply(jordan_wigner_majorana(i, Spin(s), 0, n), jordan_wigner_majorana(j, Spin(s), 1, n));
      }
  const Complex half_i(0.0, 0.5);
  for (int s = 0; s < 2; ++s)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (maj.h_tilde(i, j) != 0.0) out.add(bil[(s * n + i) * n + j], half_i * maj.h_tilde(i, j));
      }
  for (int s = 0; s < 2; ++s)
    for (int t = 0; t < 2; ++t)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) {
              const double v = maj.g(i, j, k, l);
              if (v == 0.0) continue;
              out.add(multiply(bil[(s * n + i) * n + j], bil[(t * n + k) * n + l]), -0.25 * v);
            }
  out.prune(1e-14);
  return out;
}

CMatrix dense_matrix(const PauliWord& w) {
  PauliSum s(w.n_qubits());
  s.add(w, 1.0);
  return dense_matrix(s);
}

CMatrix dense_matrix(const PauliSum& op) {
  const int nq = op.n_qubits();
  if (nq > kDenseMaxQubits) {
    throw GuardError("dense matrices limited to " + std::to_string(kDenseMaxQubits) + " qubits");
  }
  const std::uint64_t dim = std::uint64_t{1} << nq;
  CMatrix m = CMatrix::Zero(dim, dim);
  for (const auto& grp : op.xz_groups()) {
    for (std::uint64_t col = 0; col < dim; ++col) {
      const std::uint64_t row = col ^ grp.x;
      Complex s = 0.0;
      for (std::size_t t = 0; t < grp.z.size(); ++t) {
        s += (std::popcount(grp.z[t] & col) & 1) ? -grp.coeff[t] : grp.coeff[t];
      }
      m(row, col) += s;
    }
  }
  return m;
}

SparseCMatrix sparse_operator(const PauliSum& op) {
  const int nq = op.n_qubits();
  if (nq > kSparseMaxQubits) {
    throw GuardError("sparse matrices limited to " + std::to_string(kSparseMaxQubits) + " qubits");
  }
  const std::uint64_t dim = std::uint64_t{1} << nq;
  std::vector<Eigen::Triplet<Complex>> entries;
  const auto groups = op.xz_groups();
  entries.reserve(groups.size() * dim);
  for (const auto& grp : groups) {
    for (std::uint64_t col = 0; col < dim; ++col) {
      Complex s = 0.0;
      for (std::size_t t = 0; t < grp.z.size(); ++t) {
        s += (std::popcount(grp.z[t] & col) & 1) ? -grp.coeff[t] : grp.coeff[t];
      }
      if (s != 0.0) entries.emplace_back(static_cast<int>(col ^ grp.x), static_cast<int>(col), s);
    }
  }
  SparseCMatrix m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  m.setFromTriplets(entries.begin(), entries.end());
  return m;
}

SparseCMatrix sparse_operator(const PauliWord& w) {
  PauliSum s(w.n_qubits());
  s.add(w, 1.0);
  return sparse_operator(s);
}

CsrMatrix sparse_matrix(const PauliSum& op) {
  if (op.n_qubits() > kSparseMaxQubits) {
    throw GuardError("sparse matrices limited to " + std::to_string(kSparseMaxQubits) + " qubits");
  }
  return kernels::assemble_pauli(op.xz_groups(), op.n_qubits());
}

}  // namespace mtdlcu
