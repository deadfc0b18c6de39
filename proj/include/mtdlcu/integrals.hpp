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

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "mtdlcu/tensor.hpp"

namespace mtdlcu {

/// One "value i j k l" line of an FCIDUMP, indices 1-based (0 = unused).
struct FcidumpEntry {
  double value;
  int i, j, k, l;
  int line;
};

/// FCIDUMP contents as read, before any convention change.
struct RawFcidump {
  int norb = 0;
  int nelec = 0;
  int ms2 = 0;
  double constant = 0.0;
  std::vector<FcidumpEntry> entries;
};

/// Dense expansion of a RawFcidump: t_ij and (ij|kl) in chemists' order.
struct ExpandedFcidump {
  int norb = 0;
  double constant = 0.0;
  Matrix t;
  Tensor4 eri;
};

struct MolecularIntegrals {
  int n_orbitals = 0;
  double core_energy = 0.0;
  Matrix one_body;  // h_ij
  Tensor4 two_body; // g_ijkl = (ij|kl) / 2

  /// Throws DataError when symmetry or finiteness is violated beyond tol.
  void validate(double tol = 1e-10) const;
};

RawFcidump parse_fcidump(std::istream& in);
RawFcidump read_fcidump(const std::filesystem::path& path);

/// Fills every permutational partner of each entry. Conflicting partners
/// (|difference| > tol) raise DataError.
ExpandedFcidump expand(const RawFcidump& raw, double tol = 1e-8);

/// g = (ij|kl)/2, h_ij = t_ij - sum_k g_ikkj.
MolecularIntegrals to_paper_convention(const RawFcidump& raw);
MolecularIntegrals to_paper_convention(const ExpandedFcidump& dense);

/// Inverse map; entries with |value| <= drop are skipped.
RawFcidump from_paper_convention(const MolecularIntegrals& mol, double drop = 0.0);
void write_fcidump(std::ostream& out, const RawFcidump& raw);

/// Average over the 8 permutations (ij|kl) = (ji|kl) = (ij|lk) = (kl|ij) ...
Tensor4 symmetrize_eightfold(const Tensor4& g);

/// h' = U^T h U and g'_ijkl = sum U_pi U_qj U_rk U_sl g_pqrs.
MolecularIntegrals rotate_orbitals(const MolecularIntegrals& mol, const Matrix& u);

}  // namespace mtdlcu
