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

#include "mtdlcu/lcu.hpp"
#include "mtdlcu/majorana.hpp"

namespace mtdlcu {

struct SpectralRange {
  double e_min = 0.0;
  double e_max = 0.0;
  double half_range = 0.0;
};

inline constexpr int kDenseSpectrumMaxQubits = 10;
inline constexpr int kFragmentMatrixMaxQubits = 8;

/// Extremal eigenvalues of the JW matrix, constants included. Dense for
/// 2N <= 10, sparse (ARPACK through Armadillo) up to 2N <= 24.
SpectralRange spectral_range(const MajoranaHamiltonian& maj);
SpectralRange spectral_range(const PauliSum& op);
/// The ARPACK path alone, for cross-checks against the dense one.
SpectralRange sparse_spectral_range(const PauliSum& op);

/// sum_p c_p gamma_{p s m} as a qubit operator.
PauliSum majorana_sum(const RotatedMajorana& q, int n_orbitals);

/// The operator of one fragment, weight included.
PauliSum fragment_pauli_sum(const Fragment& f, int n_orbitals);

/// Dense matrix of the unweighted op; AC groups go through the Givens chain
/// and rotated Majoranas through their own dense sums. Guard 2N <= 8.
CMatrix fragment_matrix(const UnitaryOp& op, int n_orbitals);

/// For 2N <= 8 the max-abs entry of sum u_k U_k + c - H built from dense
/// fragment matrices. Above that, the 1-norm of the Pauli coefficient
/// difference, which bounds the max-abs entry.
double verify_reconstruction(const LcuDecomposition& lcu, const MajoranaHamiltonian& maj);

/// one_norm >= half_range - 1e-9.
bool verify_norm_bound(const LcuDecomposition& lcu, const SpectralRange& range);

}  // namespace mtdlcu
