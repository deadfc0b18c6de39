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

#include <Eigen/SparseCore>

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "mtdlcu/integrals.hpp"
#include "mtdlcu/kernels.hpp"
#include "mtdlcu/tensor.hpp"

namespace mtdlcu {

/// H = h0 + (i/2) sum_s h~_ij g_is0 g_js1 - (1/4) sum_st g_ijkl g_is0 g_js1 g_kt0 g_lt1.
struct MajoranaHamiltonian {
  int n_orbitals = 0;
  double h0 = 0.0;
  Matrix h_tilde;
  Tensor4 g;
};

MajoranaHamiltonian build_majorana(const MolecularIntegrals& mol);

enum class Spin : int { kAlpha = 0, kBeta = 1 };

inline int spin_orbital(int j, Spin s) { return 2 * j + static_cast<int>(s); }

/// Hermitian Pauli string over up to 64 qubits. With the masks (x, z) the
/// operator is i^{|x & z|} X^x Z^z, so Y on a qubit sets both bits.
class PauliWord {
 public:
  PauliWord() = default;
  PauliWord(int n_qubits, std::uint64_t x, std::uint64_t z) : n_(n_qubits), x_(x), z_(z) {}

  static PauliWord identity(int n_qubits) { return PauliWord(n_qubits, 0, 0); }
  /// Letters I, X, Y, Z; whitespace ignored. Qubit 0 is the first letter.
  static PauliWord from_string(std::string_view s);

  int n_qubits() const { return n_; }
  std::uint64_t x() const { return x_; }
  std::uint64_t z() const { return z_; }
  bool is_identity() const { return x_ == 0 && z_ == 0; }
  char letter(int q) const;
  std::string str() const;
  int weight() const;

  bool commutes_with(const PauliWord& o) const;

  auto operator<=>(const PauliWord&) const = default;

 private:
  int n_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
};

/// phase * word, phase = i^k with k in {0,1,2,3}.
struct PhasedWord {
  int k = 0;
  PauliWord word;
  Complex phase() const;
};

/// a * b with its phase.
PhasedWord multiply(const PhasedWord& a, const PhasedWord& b);
PhasedWord multiply(const PauliWord& a, const PauliWord& b);

/// Z...Z X_p for flavor 0 and Z...Z Y_p for flavor 1, p = spin_orbital(j, s).
PauliWord jordan_wigner_majorana(int j, Spin s, int flavor, int n_orbitals);

class PauliSum {
 public:
  explicit PauliSum(int n_qubits = 0) : n_(n_qubits) {}

  int n_qubits() const { return n_; }
  void add(const PauliWord& w, Complex c);
  void add(const PhasedWord& w, Complex c) { add(w.word, c * w.phase()); }
  /// Drops entries with |c| < tol.
  void prune(double tol = 1e-14);

  const std::map<PauliWord, Complex>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  Complex coefficient(const PauliWord& w) const;

  /// Sum of |d_q| over non-identity words.
  double one_norm() const;
  PauliSum operator+(const PauliSum& o) const;
  PauliSum operator-(const PauliSum& o) const;
  PauliSum operator*(const PauliSum& o) const;
  PauliSum scaled(Complex c) const;

  /// Terms grouped by X-mask for sparse assembly.
  std::vector<XzGroup> xz_groups() const;

 private:
  int n_ = 0;
  std::map<PauliWord, Complex> terms_;
};

inline constexpr int kPauliExpansionMaxOrbitals = 12;
inline constexpr int kDenseMaxQubits = 12;
inline constexpr int kSparseMaxQubits = 24;

/// Full qubit operator of the Hamiltonian with like terms combined.
PauliSum pauli_sum_of_hamiltonian(const MajoranaHamiltonian& maj);

/// Dense matrix in the Kronecker order where qubit 0 is the leftmost factor.
CMatrix dense_matrix(const PauliWord& w);
CMatrix dense_matrix(const PauliSum& op);
CsrMatrix sparse_matrix(const PauliSum& op);

using SparseCMatrix = Eigen::SparseMatrix<Complex>;

/// Same layout as dense_matrix, stored sparse; for small-operator algebra.
SparseCMatrix sparse_operator(const PauliSum& op);
SparseCMatrix sparse_operator(const PauliWord& w);

/// Basis index bit for qubit q in the Kronecker order above.
inline std::uint64_t qubit_bit(int q, int n_qubits) {
  return std::uint64_t{1} << (n_qubits - 1 - q);
}

}  // namespace mtdlcu
