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

#include "mtdlcu/verify.hpp"

#include <armadillo>

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "mtdlcu/errors.hpp"
#include "mtdlcu/qubit_lcu.hpp"

namespace mtdlcu {

namespace {

SpectralRange make_range(double lo, double hi) { return {lo, hi, (hi - lo) / 2.0}; }

}  // namespace

SpectralRange sparse_spectral_range(const PauliSum& op) {
  if (op.n_qubits() > kSparseMaxQubits) throw GuardError("spectral range limited to 2N <= 24");
  CsrMatrix m = sparse_matrix(op);
  const arma::uword dim = static_cast<arma::uword>(m.rows);
  // The Hamiltonian is real symmetric in the occupation basis, so CSR rows
  // double as CSC columns.
  arma::uvec rowind(m.col_idx.size()), colptr(m.row_ptr.size());
  arma::vec values(m.values.size());
  std::vector<std::pair<std::int64_t, double>> row;
  for (std::int64_t r = 0; r < m.rows; ++r) {
    row.clear();
    for (std::int64_t p = m.row_ptr[r]; p < m.row_ptr[r + 1]; ++p) {
      if (std::abs(m.values[p].imag()) > 1e-10) throw NumericError("sparse path needs a real matrix");
      row.emplace_back(m.col_idx[p], m.values[p].real());
    }
    std::sort(row.begin(), row.end());
    for (std::size_t q = 0; q < row.size(); ++q) {
      rowind[m.row_ptr[r] + q] = static_cast<arma::uword>(row[q].first);
      values[m.row_ptr[r] + q] = row[q].second;
    }
  }
  for (std::size_t r = 0; r < m.row_ptr.size(); ++r) colptr[r] = static_cast<arma::uword>(m.row_ptr[r]);
  arma::sp_mat a(rowind, colptr, values, dim, dim);
  arma::vec lo, hi;
  const bool ok_lo = arma::eigs_sym(lo, a, 1, "sa", 1e-12);
  const bool ok_hi = arma::eigs_sym(hi, a, 1, "la", 1e-12);
  if (!ok_lo || !ok_hi || lo.n_elem == 0 || hi.n_elem == 0) {
    throw NumericError("sparse eigensolver did not converge");
  }
  return make_range(lo[0], hi[0]);
}

SpectralRange spectral_range(const PauliSum& op) {
  if (op.n_qubits() <= kDenseSpectrumMaxQubits) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(dense_matrix(op), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericError("dense eigensolver failed");
    return make_range(es.eigenvalues()(0), es.eigenvalues()(es.eigenvalues().size() - 1));
  }
  return sparse_spectral_range(op);
}

SpectralRange spectral_range(const MajoranaHamiltonian& maj) {
  return spectral_range(pauli_sum_of_hamiltonian(maj));
}

PauliSum majorana_sum(const RotatedMajorana& q, int n_orbitals) {
  PauliSum s(2 * n_orbitals);
  for (int p = 0; p < q.coefficients.size(); ++p) {
    if (q.coefficients(p) != 0.0) {
      s.add(jordan_wigner_majorana(p, q.spin, q.flavor, n_orbitals), q.coefficients(p));
    }
  }
  return s;
}

namespace {

PauliSum chebyshev_polynomial(const ChebyshevSquare& c, int n) {
  PauliSum p(2 * n);
  for (int s = 0; s < 2; ++s)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (c.w(i, j) != 0.0) p.add(reflection_word(i, j, Spin(s), n), c.w(i, j) / c.normalization);
      }
  PauliSum out = (p * p).scaled(2.0);
  out.add(PauliWord::identity(2 * n), -1.0);
  out.prune(1e-15);
  return out;
}

}  // namespace

PauliSum fragment_pauli_sum(const Fragment& f, int n) {
  const int nq = 2 * n;
  return std::visit(
      [&](const auto& op) -> PauliSum {
        using T = std::decay_t<decltype(op)>;
        if constexpr (std::is_same_v<T, PauliTerm>) {
          PauliSum s(nq);
          s.add(op.word, f.weight * op.phase);
          return s;
        } else if constexpr (std::is_same_v<T, AcGroup>) {
          return ac_group_operator(op).scaled(f.weight);
        } else if constexpr (std::is_same_v<T, MajoranaProduct>) {
          PauliSum s(nq);
          s.add(PauliWord::identity(nq), f.weight * op.phase);
          for (const auto& q : op.factors) s = s * majorana_sum(q, n);
          s.prune(1e-15);
          return s;
        } else {
          return chebyshev_polynomial(op, n).scaled(f.weight);
        }
      },
      f.op);
}

CMatrix fragment_matrix(const UnitaryOp& op, int n) {
  if (2 * n > kFragmentMatrixMaxQubits) throw GuardError("fragment matrices limited to 2N <= 8");
  const int dim = 1 << (2 * n);
  return std::visit(
      [&](const auto& o) -> CMatrix {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, PauliTerm>) {
          return o.phase * dense_matrix(o.word);
        } else if constexpr (std::is_same_v<T, AcGroup>) {
          return ac_group_matrix_givens(o);
        } else if constexpr (std::is_same_v<T, MajoranaProduct>) {
          CMatrix m = o.phase * CMatrix::Identity(dim, dim);
          for (const auto& q : o.factors) m = m * sparse_operator(majorana_sum(q, n));
          return m;
        } else {
          SparseCMatrix p(dim, dim);
          for (int s = 0; s < 2; ++s)
            for (int i = 0; i < n; ++i)
              for (int j = 0; j < n; ++j) {
                if (o.w(i, j) == 0.0) continue;
                PhasedWord q = reflection_word(i, j, Spin(s), n);
                p += (o.w(i, j) / o.normalization) * q.phase() * sparse_operator(q.word);
              }
          CMatrix pd(p);
          return 2.0 * pd * pd - CMatrix::Identity(dim, dim);
        }
      },
      op);
}

double verify_reconstruction(const LcuDecomposition& lcu, const MajoranaHamiltonian& maj) {
  const int n = maj.n_orbitals;
  PauliSum target = pauli_sum_of_hamiltonian(maj);
  if (2 * n <= kFragmentMatrixMaxQubits) {
    const int dim = 1 << (2 * n);
    CMatrix sum = lcu.constant * CMatrix::Identity(dim, dim);
    for (const auto& f : lcu.fragments) sum += f.weight * fragment_matrix(f.op, n);
    return (sum - dense_matrix(target)).cwiseAbs().maxCoeff();
  }
  PauliSum approx(2 * n);
  approx.add(PauliWord::identity(2 * n), lcu.constant);
  for (const auto& f : lcu.fragments) {
    const PauliSum part = fragment_pauli_sum(f, n);
    for (const auto& [w, c] : part.terms()) approx.add(w, c);
  }
  PauliSum diff = approx - target;
  double total = 0.0;
  for (const auto& [w, c] : diff.terms()) total += std::abs(c);
  return total;
}

bool verify_norm_bound(const LcuDecomposition& lcu, const SpectralRange& range) {
  return lcu.one_norm >= range.half_range - 1e-9;
}

}  // namespace mtdlcu
