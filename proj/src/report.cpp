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

#include "mtdlcu/report.hpp"

#include <gsl/gsl_fit.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mtdlcu/fermionic_lcu.hpp"
#include "mtdlcu/mtd_l4.hpp"

namespace mtdlcu {

namespace fs = std::filesystem;

FitResult fit_loglog(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 2) throw DataError("fit_loglog: need at least 2 points");
  std::vector<double> x, y;
  for (const auto& [px, py] : points) {
    if (!(px > 0.0) || !(py > 0.0) || !std::isfinite(px) || !std::isfinite(py))
      throw DataError("fit_loglog: coordinates must be positive");
    x.push_back(std::log10(px));
    y.push_back(std::log10(py));
  }
  const std::size_t n = x.size();
  double c0, c1, cov00, cov01, cov11, sumsq;
  if (gsl_fit_linear(x.data(), 1, y.data(), 1, n, &c0, &c1, &cov00, &cov01, &cov11, &sumsq) != 0)
    throw NumericError("fit_loglog: degenerate abscissae");
  if (!std::isfinite(c0) || !std::isfinite(c1)) throw NumericError("fit_loglog: degenerate abscissae");
  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= static_cast<double>(n);
  double total = 0.0;
  for (double v : y) total += (v - mean) * (v - mean);
  FitResult r;
  r.alpha = c0;
  r.beta = c1;
  r.r_squared = total > 0.0 ? 1.0 - sumsq / total : 1.0;
  r.n_points = static_cast<int>(n);
  return r;
}

const std::vector<std::string>& known_methods() {
  static const std::vector<std::string> m = {"pauli", "oo-pauli", "ac",     "oo-ac",  "sf",
                                             "df",    "csa",      "l4-mps", "l4-svd", "l4-cp4"};
  return m;
}

namespace {

bool is_known(const std::string& m) {
  const auto& k = known_methods();
  return std::find(k.begin(), k.end(), m) != k.end();
}

LcuDecomposition decompose_plain(const MajoranaHamiltonian& maj, const std::string& method, const MethodOptions& o) {
  if (method == "pauli") return sparse_pauli_lcu(maj, o.keep_threshold);
  if (method == "ac") return ac_lcu(maj, o.ac_level);
  if (method == "sf") return cholesky_sf(maj, o.tol).lcu;
  if (method == "df") {
    SfResult sf = cholesky_sf(maj, o.tol);
    return double_factorize(maj, sf.factors);
  }
  if (method == "csa") {
    CsaBudget b;
    b.tol = o.tol;
    b.seed = o.seed;
    return csa_decompose(maj, o.csa_fragments, b).lcu;
  }
  if (method == "l4-mps") return l4_lcu(mps_factorize(maj.g, o.tol), maj);
  if (method == "l4-svd") return l4_lcu(svd_chain_factorize(maj.g, o.tol), maj);
  if (method == "l4-cp4") {
    Cp4Options c;
    c.max_rank = o.max_rank;
    c.tol = o.tol;
    c.seed = o.seed;
    return l4_lcu(cp4_als(maj.g, c), maj);
  }
  throw ConfigError("unknown method '" + method + "'");
}

}  // namespace

Decomposed decompose(const MolecularIntegrals& mol, const std::string& method, const MethodOptions& o) {
  if (!is_known(method)) throw ConfigError("unknown method '" + method + "'");
  if (method == "oo-pauli" || method == "oo-ac") {
    const bool pauli = method == "oo-pauli";
    OoResult oo = orbital_optimize(mol, pauli ? OoObjective::kPauli : OoObjective::kAc, o.oo);
    Decomposed d;
    d.target = build_majorana(oo.rotated);
    d.lcu = decompose_plain(d.target, pauli ? "pauli" : "ac", o);
    d.lcu.method = method;
    d.lcu.metadata.converged = d.lcu.metadata.converged && oo.converged;
    d.lcu.metadata.values["oo_initial_norm"] = oo.initial_norm;
    d.lcu.metadata.values["oo_final_norm"] = oo.final_norm;
    d.lcu.metadata.values["oo_evaluations"] = oo.evaluations;
    return d;
  }
  Decomposed d;
  d.target = build_majorana(mol);
  d.lcu = decompose_plain(d.target, method, o);
  return d;
}

fs::path resolve_input(const std::string& name, const fs::path& base) {
  std::vector<fs::path> tried;
  const fs::path p(name);
  tried.push_back(p);
  if (!base.empty() && p.is_relative()) tried.push_back(base / p);
  if (const char* env = std::getenv("MTDLCU_FIXTURES"); env && *env) {
    tried.push_back(fs::path(env) / p);
    if (p.extension() != ".fcidump") tried.push_back(fs::path(env) / (name + ".fcidump"));
  }
  for (const auto& t : tried) {
    std::error_code ec;
    if (fs::is_regular_file(t, ec)) return t;
  }
  throw ConfigError("input not found: " + name);
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_double(const std::string& key, const std::string& v, int line) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used == v.size() && std::isfinite(d)) return d;
  } catch (const std::exception&) {
  }
  throw ConfigError("line " + std::to_string(line) + ": bad number for " + key + ": '" + v + "'");
}

long long to_int(const std::string& key, const std::string& v, int line) {
  try {
    std::size_t used = 0;
    const long long i = std::stoll(v, &used);
    if (used == v.size()) return i;
  } catch (const std::exception&) {
  }
  throw ConfigError("line " + std::to_string(line) + ": bad integer for " + key + ": '" + v + "'");
}

bool to_bool(const std::string& key, const std::string& v, int line) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("line " + std::to_string(line) + ": bad boolean for " + key + ": '" + v + "'");
}

}  // namespace

PipelineConfig parse_pipeline_config(std::istream& in, const fs::path& base_dir) {
  PipelineConfig c;
  c.base_dir = base_dir;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (const auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
    raw = trim(raw);
    if (raw.empty()) continue;
    const auto eq = raw.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(line) + ": expected key = value");
    const std::string key = trim(raw.substr(0, eq));
    const std::string val = trim(raw.substr(eq + 1));
    if (key == "input" || key == "inputs") {
      for (auto& s : split_list(val)) c.inputs.push_back(s);
    } else if (key == "methods" || key == "method") {
      for (auto& s : split_list(val)) c.methods.push_back(s);
    } else if (key == "tol") {
      c.options.tol = to_double(key, val, line);
    } else if (key.rfind("tol.", 0) == 0) {
      const std::string m = key.substr(4);
      if (!is_known(m)) throw ConfigError("line " + std::to_string(line) + ": unknown method in " + key);
      c.method_tol[m] = to_double(key, val, line);
    } else if (key == "seed") {
      const auto s = static_cast<std::uint64_t>(to_int(key, val, line));
      c.options.seed = s;
      c.options.oo.seed = s;
    } else if (key == "csa_fragments") {
      c.options.csa_fragments = static_cast<int>(to_int(key, val, line));
    } else if (key == "max_rank") {
      c.options.max_rank = static_cast<int>(to_int(key, val, line));
    } else if (key == "keep_threshold") {
      c.options.keep_threshold = to_double(key, val, line);
    } else if (key == "ac_level") {
      if (val == "tensor") c.options.ac_level = AcLevel::kTensor;
      else if (val == "qubit") c.options.ac_level = AcLevel::kQubit;
      else throw ConfigError("line " + std::to_string(line) + ": ac_level is tensor or qubit");
    } else if (key == "oo_restarts") {
      c.options.oo.restarts = static_cast<int>(to_int(key, val, line));
    } else if (key == "oo_max_evaluations") {
      c.options.oo.max_evaluations = static_cast<int>(to_int(key, val, line));
    } else if (key == "eps_coeff") {
      c.eps_coeff = to_double(key, val, line);
    } else if (key == "eps_rot") {
      c.eps_rot = to_double(key, val, line);
    } else if (key == "strict_mu") {
      c.strict_mu = to_bool(key, val, line);
    } else if (key == "verify_max_orbitals") {
      c.verify_max_orbitals = static_cast<int>(to_int(key, val, line));
    } else if (key == "spectrum_max_qubits") {
      c.spectrum_max_qubits = static_cast<int>(to_int(key, val, line));
    } else if (key == "csv") {
      c.csv_path = val;
    } else if (key == "json") {
      c.json_path = val;
    } else if (key == "series_csv") {
      c.series_path = val;
    } else {
      throw ConfigError("line " + std::to_string(line) + ": unknown key '" + key + "'");
    }
  }
  for (const auto& m : c.methods)
    if (!is_known(m)) throw ConfigError("unknown method '" + m + "'");
  if (c.options.tol <= 0.0) throw ConfigError("tol must be positive");
  if (c.options.csa_fragments < 1) throw ConfigError("csa_fragments must be at least 1");
  if (c.options.max_rank < 1) throw ConfigError("max_rank must be at least 1");
  return c;
}

PipelineConfig read_pipeline_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  return parse_pipeline_config(in, path.parent_path());
}

ReportRow evaluate(const std::string& input, const MolecularIntegrals& mol, const std::string& method,
                   const MethodOptions& o, const PipelineConfig& config) {
  Decomposed d = decompose(mol, method, o);
  const LcuDecomposition& lcu = d.lcu;
  ReportRow r;
  r.input = input;
  r.method = method;
  r.n_orbitals = lcu.n_orbitals;
  r.lambda = lcu.one_norm;
  r.constant = lcu.constant;
  r.fragments = lcu.fragments.size();
  r.truncation_loss = lcu.metadata.truncation_loss;
  r.residual_sq = lcu.metadata.residual_sq;
  r.converged = lcu.metadata.converged;
  r.shape = lcu.shape;
  if (2 * lcu.n_orbitals <= config.spectrum_max_qubits) r.spectrum = spectral_range(d.target);
  if (lcu.n_orbitals <= config.verify_max_orbitals) {
    r.deviation = verify_reconstruction(lcu, d.target);
    r.reconstruction_ok = *r.deviation <= std::max(1e-6, lcu.metadata.truncation_loss);
    if (r.spectrum) r.bound_ok = verify_norm_bound(lcu, *r.spectrum);
  }
  PrecisionOverride po;
  po.eps_coeff = config.eps_coeff;
  po.eps_rot = config.eps_rot;
  po.strict_mu = config.strict_mu;
  r.cost = estimate_costs(lcu, po);
  return r;
}

namespace {

double logical_qubits(const CostReport& c) {
  return static_cast<double>(c.qubits_nonreusable + c.qubits_reusable);
}

std::vector<SeriesFit> series_fits(const std::vector<ReportRow>& rows, const std::vector<std::string>& methods) {
  std::vector<SeriesFit> out;
  for (const auto& m : methods) {
    std::vector<std::pair<double, double>> hard, qubits;
    for (const auto& r : rows) {
      if (r.method != m || !r.cost) continue;
      hard.emplace_back(r.n_orbitals, r.cost->hardness);
      qubits.emplace_back(r.n_orbitals, logical_qubits(*r.cost));
    }
    // A fit needs two distinct sizes.
    std::vector<double> xs;
    for (const auto& p : hard) xs.push_back(p.first);
    std::sort(xs.begin(), xs.end());
    if (std::unique(xs.begin(), xs.end()) - xs.begin() < 2) continue;
    SeriesFit f;
    f.method = m;
    f.hardness = fit_loglog(hard);
    f.qubits = fit_loglog(qubits);
    out.push_back(f);
  }
  return out;
}

}  // namespace

PipelineReport run_pipeline(const PipelineConfig& config) {
  for (const auto& m : config.methods)
    if (!is_known(m)) throw ConfigError("unknown method '" + m + "'");
  std::vector<fs::path> paths;
  for (const auto& in : config.inputs) paths.push_back(resolve_input(in, config.base_dir));
  std::vector<MolecularIntegrals> mols;
  for (const auto& p : paths) mols.push_back(to_paper_convention(read_fcidump(p)));

  struct Job {
    std::size_t input;
    std::string method;
  };
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < mols.size(); ++i)
    for (const auto& m : config.methods) jobs.push_back({i, m});

  std::vector<ReportRow> rows(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(jobs.size()); ++j) {
    try {
      MethodOptions o = config.options;
      if (auto t = config.method_tol.find(jobs[j].method); t != config.method_tol.end()) o.tol = t->second;
      rows[j] = evaluate(config.inputs[jobs[j].input], mols[jobs[j].input], jobs[j].method, o, config);
    } catch (...) {
      errors[j] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  PipelineReport report;
  report.rows = std::move(rows);
  for (const auto& r : report.rows)
    if ((r.reconstruction_ok && !*r.reconstruction_ok) || (r.bound_ok && !*r.bound_ok))
      report.verification_failed = true;
  report.fits = series_fits(report.rows, config.methods);
  return report;
}

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

template <class T>
std::string opt_num(const std::optional<T>& v) {
  return v ? num(static_cast<double>(*v)) : "";
}

std::string opt_bool(const std::optional<bool>& v) { return v ? (*v ? "true" : "false") : ""; }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

nlohmann::ordered_json fit_json(const FitResult& f) {
  nlohmann::ordered_json j;
  j["alpha"] = f.alpha;
  j["beta"] = f.beta;
  j["r_squared"] = f.r_squared;
  j["n_points"] = f.n_points;
  return j;
}

}  // namespace

std::string report_csv(const PipelineReport& report) {
  std::string out =
      "input,method,N,lambda,constant,fragments,truncation_loss,half_range,deviation,reconstruction_ok,"
      "bound_ok,t_sel,t_prep,t_gates,rz,t_total,qubits_clean,qubits_reusable,hardness,eps_coeff,eps_rot\n";
  for (const auto& r : report.rows) {
    out += csv_field(r.input) + "," + r.method + "," + std::to_string(r.n_orbitals) + "," + num(r.lambda) + "," +
           num(r.constant) + "," + std::to_string(r.fragments) + "," + num(r.truncation_loss) + ",";
    out += (r.spectrum ? num(r.spectrum->half_range) : "") + "," + opt_num(r.deviation) + "," +
           opt_bool(r.reconstruction_ok) + "," + opt_bool(r.bound_ok) + ",";
    if (r.cost) {
      const CostReport& c = *r.cost;
      out += std::to_string(c.sel.t) + "," + std::to_string(c.prep.t) + "," + std::to_string(c.t_gates) + "," +
             std::to_string(c.rz_count) + "," + num(static_cast<double>(c.t_gates) + c.rz_tgate_equiv) + "," +
             std::to_string(c.qubits_nonreusable) + "," +
             std::to_string(c.qubits_reusable) + "," + num(c.hardness) + "," + num(c.params.eps_coeff) + "," +
             num(c.params.eps_rot);
    } else {
      out += ",,,,,,,,,";
    }
    out += "\n";
  }
  return out;
}

std::string report_json(const PipelineReport& report) {
  nlohmann::ordered_json j;
  j["calibration"] = {
      {"eps_coeff_default", "1e-3 / lambda"},
      {"eps_rot_default", "1e-3 / (lambda * max(1, rz))"},
      {"rz_t_cost", "3.067 log2(1/eps_rot) + 9.678"},
      {"t_gates", "T_SEL + 2 T_PREP"},
  };
  auto rows = nlohmann::ordered_json::array();
  for (const auto& r : report.rows) {
    nlohmann::ordered_json row;
    row["input"] = r.input;
    row["method"] = r.method;
    row["N"] = r.n_orbitals;
    row["lambda"] = r.lambda;
    row["constant"] = r.constant;
    row["fragments"] = r.fragments;
    row["truncation_loss"] = r.truncation_loss;
    row["residual_sq"] = r.residual_sq;
    row["converged"] = r.converged;
    row["shape"] = {{"sparse_terms", r.shape.sparse_terms},
                    {"groups", r.shape.group_sizes.size()},
                    {"factors", r.shape.factors},
                    {"weights", r.shape.weights},
                    {"bond", {r.shape.bond[0], r.shape.bond[1], r.shape.bond[2]}}};
    if (r.spectrum)
      row["spectrum"] = {{"e_min", r.spectrum->e_min},
                         {"e_max", r.spectrum->e_max},
                         {"half_range", r.spectrum->half_range}};
    else
      row["spectrum"] = nullptr;
    nlohmann::ordered_json ver;
    ver["deviation"] = r.deviation ? nlohmann::ordered_json(*r.deviation) : nlohmann::ordered_json(nullptr);
    ver["reconstruction_ok"] =
        r.reconstruction_ok ? nlohmann::ordered_json(*r.reconstruction_ok) : nlohmann::ordered_json(nullptr);
    ver["bound_ok"] = r.bound_ok ? nlohmann::ordered_json(*r.bound_ok) : nlohmann::ordered_json(nullptr);
    row["verification"] = ver;
    if (r.cost) {
      const CostReport& c = *r.cost;
      row["cost"] = {{"method", c.method},
                     {"N", c.n_orbitals},
                     {"lambda", c.lambda},
                     {"t_sel", c.sel.t},
                     {"t_prep", c.prep.t},
                     {"t_gates", c.t_gates},
                     {"rz", c.rz_count},
                     {"rz_tgate_equiv", c.rz_tgate_equiv},
                     {"t_total", static_cast<double>(c.t_gates) + c.rz_tgate_equiv},
                     {"qubits", {{"clean", c.qubits_nonreusable}, {"reusable", c.qubits_reusable}}},
                     {"hardness", c.hardness},
                     {"eps", {{"coeff", c.params.eps_coeff}, {"rot", c.params.eps_rot}}}};
    } else {
      row["cost"] = nullptr;
    }
    rows.push_back(row);
  }
  j["rows"] = rows;
  auto fits = nlohmann::ordered_json::array();
  for (const auto& f : report.fits) {
    nlohmann::ordered_json e;
    e["method"] = f.method;
    e["hardness"] = fit_json(f.hardness);
    e["qubits"] = f.qubits ? fit_json(*f.qubits) : nlohmann::ordered_json(nullptr);
    fits.push_back(e);
  }
  j["fits"] = fits;
  j["verification_failed"] = report.verification_failed;
  return j.dump(2) + "\n";
}

std::string series_csv(const PipelineReport& report) {
  std::string out = "method,N,hardness,qubits\n";
  for (const auto& r : report.rows) {
    if (!r.cost) continue;
    out += r.method + "," + std::to_string(r.n_orbitals) + "," + num(r.cost->hardness) + "," +
           num(logical_qubits(*r.cost)) + "\n";
  }
  return out;
}

namespace {

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path);
  out << text;
  if (!out) throw ConfigError("write failed: " + path);
}

}  // namespace

void write_outputs(const PipelineReport& report, const PipelineConfig& config) {
  if (!config.csv_path.empty()) write_file(config.csv_path, report_csv(report));
  if (!config.json_path.empty()) write_file(config.json_path, report_json(report));
  if (!config.series_path.empty()) write_file(config.series_path, series_csv(report));
}

}  // namespace mtdlcu
