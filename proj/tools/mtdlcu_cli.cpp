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

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mtdlcu/errors.hpp"
#include "mtdlcu/report.hpp"
#include "mtdlcu/verify.hpp"

namespace {

using namespace mtdlcu;

constexpr int kOk = 0;
constexpr int kVerificationFailed = 1;
constexpr int kUsage = 2;

struct Common {
  std::string input;
  std::string method = "pauli";
  std::string output = "json";
  double tol = 1e-6;
  int fragments = 8;
  int max_rank = 512;
  std::uint64_t seed = 1234;
  std::optional<double> eps_coeff;
  std::optional<double> eps_rot;
  bool strict_mu = false;
};

void add_common(CLI::App* sub, Common& c, bool with_method) {
  sub->add_option("-i,--input", c.input, "FCIDUMP path or fixture name")->required();
  if (with_method)
    sub->add_option("-m,--method", c.method, "LCU method")->check(CLI::IsMember(known_methods()));
  sub->add_option("-o,--output", c.output, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--tol", c.tol, "factorization tolerance, sum |dg|^2");
  sub->add_option("--fragments", c.fragments, "CSA fragment count");
  sub->add_option("--max-rank", c.max_rank, "CP4 rank ceiling");
  sub->add_option("--seed", c.seed, "seed for CSA, CP4 and orbital optimization");
  sub->add_option("--eps-coeff", c.eps_coeff, "coefficient precision");
  sub->add_option("--eps-rot", c.eps_rot, "rotation synthesis precision");
  sub->add_flag("--strict-mu", c.strict_mu, "mu = ceil(log2(n eps))");
}

PipelineConfig single_config(const Common& c) {
  PipelineConfig cfg;
  cfg.inputs = {c.input};
  cfg.methods = {c.method};
  cfg.options.tol = c.tol;
  cfg.options.csa_fragments = c.fragments;
  cfg.options.max_rank = c.max_rank;
  cfg.options.seed = c.seed;
  cfg.options.oo.seed = c.seed;
  cfg.eps_coeff = c.eps_coeff;
  cfg.eps_rot = c.eps_rot;
  cfg.strict_mu = c.strict_mu;
  return cfg;
}

void emit(const PipelineReport& rep, const std::string& output) {
  std::cout << (output == "csv" ? report_csv(rep) : report_json(rep));
}

int run_single(const Common& c, int verify_max_orbitals, int spectrum_max_qubits, bool with_cost) {
  PipelineConfig cfg = single_config(c);
  cfg.verify_max_orbitals = verify_max_orbitals;
  cfg.spectrum_max_qubits = spectrum_max_qubits;
  PipelineReport rep = run_pipeline(cfg);
  if (!with_cost)
    for (auto& r : rep.rows) r.cost.reset();
  emit(rep, c.output);
  return rep.verification_failed ? kVerificationFailed : kOk;
}

int run_spectrum(const std::string& input, const std::string& output) {
  const auto mol = to_paper_convention(read_fcidump(resolve_input(input)));
  const SpectralRange r = spectral_range(build_majorana(mol));
  if (output == "csv") {
    std::printf("input,N,e_min,e_max,half_range\n%s,%d,%.12g,%.12g,%.12g\n", input.c_str(), mol.n_orbitals,
                r.e_min, r.e_max, r.half_range);
  } else {
    nlohmann::ordered_json j;
    j["input"] = input;
    j["N"] = mol.n_orbitals;
    j["e_min"] = r.e_min;
    j["e_max"] = r.e_max;
    j["half_range"] = r.half_range;
    std::cout << j.dump(2) << "\n";
  }
  return kOk;
}

std::vector<std::pair<double, double>> read_points(const std::string& path) {
  std::ifstream file;
  std::istream* in = &std::cin;
  if (path != "-") {
    file.open(path);
    if (!file) throw ConfigError("cannot open " + path);
    in = &file;
  }
  std::vector<std::pair<double, double>> pts;
  std::string line;
  while (std::getline(*in, line)) {
    for (char& ch : line)
      if (ch == ',' || ch == '\t') ch = ' ';
    std::istringstream ls(line);
    double x, y;
    if (ls >> x >> y) pts.emplace_back(x, y);  // header and blank lines fall through
  }
  return pts;
}

int run_fit(const std::string& path, const std::string& output) {
  const FitResult f = fit_loglog(read_points(path));
  if (output == "csv") {
    std::printf("alpha,beta,r_squared,n_points\n%.12g,%.12g,%.12g,%d\n", f.alpha, f.beta, f.r_squared, f.n_points);
  } else {
    nlohmann::ordered_json j;
    j["alpha"] = f.alpha;
    j["beta"] = f.beta;
    j["r_squared"] = f.r_squared;
    j["n_points"] = f.n_points;
    std::cout << j.dump(2) << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LCU decompositions of electronic Hamiltonians and their fault-tolerant costs"};
  app.require_subcommand(1);

  Common dec, est, ver;
  auto* s_dec = app.add_subcommand("decompose", "one-norm and fragment summary");
  add_common(s_dec, dec, true);
  auto* s_est = app.add_subcommand("estimate", "decomposition plus circuit costs");
  add_common(s_est, est, true);
  auto* s_ver = app.add_subcommand("verify", "reconstruction and spectral-bound checks");
  add_common(s_ver, ver, true);
  int ver_max_orbitals = 6;
  s_ver->add_option("--max-orbitals", ver_max_orbitals, "largest N to reconstruct");

  std::string spec_input, spec_output = "json";
  auto* s_spec = app.add_subcommand("spectrum", "extremal eigenvalues of H");
  s_spec->add_option("-i,--input", spec_input, "FCIDUMP path or fixture name")->required();
  s_spec->add_option("-o,--output", spec_output, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  std::string fit_input = "-", fit_output = "json";
  auto* s_fit = app.add_subcommand("fit", "log-log least squares of x,y pairs");
  s_fit->add_option("-i,--input", fit_input, "file of x,y lines, - for stdin");
  s_fit->add_option("-o,--output", fit_output, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  std::string config_path, pipe_output = "json";
  std::optional<std::string> pipe_csv, pipe_json, pipe_series;
  auto* s_pipe = app.add_subcommand("pipeline", "batch run from a key = value config");
  s_pipe->add_option("-c,--config", config_path, "config file")->required();
  s_pipe->add_option("-o,--output", pipe_output, "stdout format, json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  s_pipe->add_option("--csv", pipe_csv, "override csv path");
  s_pipe->add_option("--json", pipe_json, "override json path");
  s_pipe->add_option("--series-csv", pipe_series, "override series path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*s_dec) return run_single(dec, -1, 0, false);
    if (*s_est) return run_single(est, -1, 0, true);
    if (*s_ver) return run_single(ver, ver_max_orbitals, 24, false);
    if (*s_spec) return run_spectrum(spec_input, spec_output);
    if (*s_fit) return run_fit(fit_input, fit_output);
    if (*s_pipe) {
      PipelineConfig cfg = read_pipeline_config(config_path);
      if (pipe_csv) cfg.csv_path = *pipe_csv;
      if (pipe_json) cfg.json_path = *pipe_json;
      if (pipe_series) cfg.series_path = *pipe_series;
      const PipelineReport rep = run_pipeline(cfg);
      write_outputs(rep, cfg);
      if (cfg.csv_path.empty() && cfg.json_path.empty()) emit(rep, pipe_output);
      if (rep.verification_failed) std::cerr << "verification failed\n";
      return rep.verification_failed ? kVerificationFailed : kOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
