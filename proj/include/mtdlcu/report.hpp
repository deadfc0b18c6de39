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
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mtdlcu/errors.hpp"
#include "mtdlcu/integrals.hpp"
#include "mtdlcu/lcu.hpp"
#include "mtdlcu/majorana.hpp"
#include "mtdlcu/qubit_lcu.hpp"
#include "mtdlcu/resources.hpp"
#include "mtdlcu/verify.hpp"

namespace mtdlcu {

struct FitResult {
  double alpha = 0.0;
  double beta = 0.0;
  double r_squared = 0.0;
  int n_points = 0;
};

/// Least squares of log10 y against log10 x.
FitResult fit_loglog(const std::vector<std::pair<double, double>>& points);

struct MethodOptions {
  double tol = 1e-6;                    // factorization residual, sum |Delta g|^2
  double keep_threshold = kSparseThreshold;
  int csa_fragments = 8;
  int max_rank = 512;
  std::uint64_t seed = 1234;
  AcLevel ac_level = kDefaultAcLevel;
  OoBudget oo;
};

const std::vector<std::string>& known_methods();

struct Decomposed {
  LcuDecomposition lcu;
  MajoranaHamiltonian target;  // the Hamiltonian in the basis the LCU was built in
};

Decomposed decompose(const MolecularIntegrals& mol, const std::string& method, const MethodOptions& o = {});

/// Name or path to an FCIDUMP: as given, relative to base, then under the
/// directory in MTDLCU_FIXTURES (with ".fcidump" appended when missing).
std::filesystem::path resolve_input(const std::string& name, const std::filesystem::path& base = {});

struct PipelineConfig {
  std::vector<std::string> inputs;
  std::vector<std::string> methods;
  MethodOptions options;
  std::map<std::string, double> method_tol;  // tol.<method> overrides
  int verify_max_orbitals = 4;
  int spectrum_max_qubits = 16;
  std::optional<double> eps_coeff;
  std::optional<double> eps_rot;
  bool strict_mu = false;
  std::string csv_path;
  std::string json_path;
  std::string series_path;
  std::filesystem::path base_dir;
};

/// Flat "key = value" lines, '#' comments. Lists are comma separated and
/// repeated keys append.
PipelineConfig parse_pipeline_config(std::istream& in, const std::filesystem::path& base_dir = {});
PipelineConfig read_pipeline_config(const std::filesystem::path& path);

struct ReportRow {
  std::string input;
  std::string method;
  int n_orbitals = 0;
  double lambda = 0.0;
  double constant = 0.0;
  std::size_t fragments = 0;
  double truncation_loss = 0.0;
  double residual_sq = 0.0;
  bool converged = true;
  LcuShape shape;
  std::optional<SpectralRange> spectrum;
  std::optional<double> deviation;
  std::optional<bool> reconstruction_ok;
  std::optional<bool> bound_ok;
  std::optional<CostReport> cost;
};

struct SeriesFit {
  std::string method;
  FitResult hardness;
  std::optional<FitResult> qubits;
};

struct PipelineReport {
  std::vector<ReportRow> rows;
  std::vector<SeriesFit> fits;
  bool verification_failed = false;
};

/// One row per (input, method) in config order. Inputs and methods are
/// checked before any work so a bad config leaves no output behind.
PipelineReport run_pipeline(const PipelineConfig& config);

ReportRow evaluate(const std::string& input, const MolecularIntegrals& mol, const std::string& method,
                   const MethodOptions& o, const PipelineConfig& config);

std::string report_csv(const PipelineReport& report);
std::string report_json(const PipelineReport& report);
/// (N, hardness, qubits) per method.
std::string series_csv(const PipelineReport& report);

/// Writes every output named in the config.
void write_outputs(const PipelineReport& report, const PipelineConfig& config);

}  // namespace mtdlcu
