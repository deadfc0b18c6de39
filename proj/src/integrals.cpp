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

#include "mtdlcu/integrals.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "mtdlcu/errors.hpp"
#include "mtdlcu/kernels.hpp"

namespace mtdlcu {

namespace {

std::string upper(std::string s) {
  for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

// Looks up KEY=<int> in the namelist text. Returns false when absent.
bool header_int(const std::string& header, const std::string& key, int& value, int line) {
  std::size_t pos = 0;
  while ((pos = header.find(key, pos)) != std::string::npos) {
    bool left_ok = pos == 0 || !std::isalnum(static_cast<unsigned char>(header[pos - 1]));
    std::size_t p = pos + key.size();
    while (p < header.size() && std::isspace(static_cast<unsigned char>(header[p]))) ++p;
    if (left_ok && p < header.size() && header[p] == '=') {
      ++p;
      while (p < header.size() && std::isspace(static_cast<unsigned char>(header[p]))) ++p;
      std::size_t end = p;
      if (end < header.size() && (header[end] == '-' || header[end] == '+')) ++end;
      while (end < header.size() && std::isdigit(static_cast<unsigned char>(header[end]))) ++end;
      auto [ptr, ec] = std::from_chars(header.data() + (header[p] == '+' ? p + 1 : p),
                                       header.data() + end, value);
      if (ec != std::errc() || ptr != header.data() + end) {
        throw ParseError("malformed header value for " + key, line);
      }
      return true;
    }
    pos += key.size();
  }
  return false;
}

bool header_flag(const std::string& header, const std::string& key) {
  std::size_t pos = header.find(key);
  if (pos == std::string::npos) return false;
  std::size_t eq = header.find('=', pos);
  if (eq == std::string::npos) return false;
  std::string rest = header.substr(eq + 1, 8);
  return rest.find("T") != std::string::npos || rest.find('1') == 0;
}

bool parse_double(const std::string& tok, double& v) {
  std::string t = tok;
  for (char& c : t) {
    if (c == 'd' || c == 'D') c = 'e';
  }
  char* end = nullptr;
  v = std::strtod(t.c_str(), &end);
  return end != t.c_str() && *end == '\0' && std::isfinite(v);
}

bool parse_index(const std::string& tok, int& v) {
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  return ec == std::errc() && ptr == tok.data() + tok.size();
}

void set_checked(double& slot, bool& filled, double v, double tol, const FcidumpEntry& e) {
  if (filled && std::abs(slot - v) > tol) {
    throw DataError("line " + std::to_string(e.line) +
                    ": entry conflicts with a symmetry partner given earlier");
  }
  slot = v;
  filled = true;
}

}  // namespace

RawFcidump parse_fcidump(std::istream& in) {
  RawFcidump raw;
  std::string line;
  int lineno = 0;
  std::string header;
  bool in_header = false;
  bool header_done = false;
  int header_line = 0;
  while (!header_done && std::getline(in, line)) {
    ++lineno;
    std::string u = upper(line);
    if (!in_header) {
      if (u.find_first_not_of(" \t\r") == std::string::npos) continue;
      std::size_t p = u.find("&FCI");
      if (p == std::string::npos) throw ParseError("expected &FCI header", lineno);
      in_header = true;
      header_line = lineno;
      u = u.substr(p + 4);
    }
    std::size_t end = u.find("&END");
    if (end == std::string::npos) end = u.find('/');
    if (end != std::string::npos) {
      header += " " + u.substr(0, end);
      header_done = true;
    } else {
      header += " " + u;
    }
  }
  if (!header_done) throw ParseError("unterminated or missing &FCI header", lineno);

  if (!header_int(header, "NORB", raw.norb, header_line) || raw.norb <= 0) {
    throw ParseError("header lacks a positive NORB", header_line);
  }
  header_int(header, "NELEC", raw.nelec, header_line);
  header_int(header, "MS2", raw.ms2, header_line);
  int iuhf = 0;
  if (header_flag(header, "UHF") ||
      (header_int(header, "IUHF", iuhf, header_line) && iuhf != 0)) {
    throw ParseError("unrestricted (spin-orbital) FCIDUMP files are not supported", header_line);
  }

  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ss(line);
    std::vector<std::string> tok;
    std::string t;
    while (ss >> t) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok.size() != 5) throw ParseError("expected 'value i j k l'", lineno);
    FcidumpEntry e{0.0, 0, 0, 0, 0, lineno};
    if (!parse_double(tok[0], e.value)) throw ParseError("non-numeric value '" + tok[0] + "'", lineno);
    int* idx[4] = {&e.i, &e.j, &e.k, &e.l};
    for (int q = 0; q < 4; ++q) {
      if (!parse_index(tok[q + 1], *idx[q])) {
        throw ParseError("non-integer index '" + tok[q + 1] + "'", lineno);
      }
      if (*idx[q] < 0 || *idx[q] > raw.norb) {
        throw ParseError("index " + tok[q + 1] + " outside [0, NORB]", lineno);
      }
    }
    const bool two = e.i > 0 && e.j > 0 && e.k > 0 && e.l > 0;
    const bool one = e.i > 0 && e.j > 0 && e.k == 0 && e.l == 0;
    const bool scalar = e.i == 0 && e.j == 0 && e.k == 0 && e.l == 0;
    const bool orbital_energy = e.i > 0 && e.j == 0 && e.k == 0 && e.l == 0;
    if (scalar) {
      raw.constant += e.value;
    } else if (two || one) {
      raw.entries.push_back(e);
    } else if (!orbital_energy) {
      throw ParseError("unrecognized index pattern", lineno);
    }
  }
  return raw;
}

RawFcidump read_fcidump(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return parse_fcidump(in);
}

ExpandedFcidump expand(const RawFcidump& raw, double tol) {
  const int n = raw.norb;
  ExpandedFcidump d;
  d.norb = n;
  d.constant = raw.constant;
  d.t = Matrix::Zero(n, n);
  d.eri = Tensor4(n);
  std::vector<char> t_set(static_cast<std::size_t>(n) * n, 0);
  std::vector<char> g_set(d.eri.size(), 0);
  for (const auto& e : raw.entries) {
    const int i = e.i - 1, j = e.j - 1;
    if (e.k == 0) {
      for (auto [a, b] : {std::pair{i, j}, std::pair{j, i}}) {
        bool f = t_set[a * n + b];
        set_checked(d.t(a, b), f, e.value, tol, e);
        t_set[a * n + b] = 1;
      }
      continue;
    }
    const int k = e.k - 1, l = e.l - 1;
    const int perms[8][4] = {{i, j, k, l}, {j, i, k, l}, {i, j, l, k}, {j, i, l, k},
                             {k, l, i, j}, {l, k, i, j}, {k, l, j, i}, {l, k, j, i}};
    for (const auto& p : perms) {
      const std::size_t off = d.eri.offset(p[0], p[1], p[2], p[3]);
      bool f = g_set[off];
      set_checked(d.eri.data()[off], f, e.value, tol, e);
      g_set[off] = 1;
    }
  }
  return d;
}

void MolecularIntegrals::validate(double tol) const {
  const int n = n_orbitals;
  if (n <= 0 || one_body.rows() != n || one_body.cols() != n || two_body.dim() != n) {
    throw DataError("integral tensor shapes do not match n_orbitals");
  }
  if (!std::isfinite(core_energy) || !one_body.allFinite()) throw DataError("non-finite integrals");
  for (double v : two_body.data()) {
    if (!std::isfinite(v)) throw DataError("non-finite two-body integral");
  }
  if ((one_body - one_body.transpose()).cwiseAbs().maxCoeff() > tol) {
    throw DataError("one-body tensor is not symmetric");
  }
  const Tensor4& g = two_body;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const double v = g(i, j, k, l);
          if (std::abs(v - g(j, i, k, l)) > tol || std::abs(v - g(i, j, l, k)) > tol ||
              std::abs(v - g(k, l, i, j)) > tol) {
            throw DataError("two-body tensor lacks 8-fold symmetry");
          }
        }
}

MolecularIntegrals to_paper_convention(const ExpandedFcidump& dense) {
  const int n = dense.norb;
  MolecularIntegrals mol;
  mol.n_orbitals = n;
  mol.core_energy = dense.constant;
  mol.two_body = dense.eri;
  mol.two_body *= 0.5;
  mol.one_body = dense.t;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) mol.one_body(i, j) -= mol.two_body(i, k, k, j);
  mol.validate(1e-8);
  return mol;
}

MolecularIntegrals to_paper_convention(const RawFcidump& raw) {
  return to_paper_convention(expand(raw));
}

RawFcidump from_paper_convention(const MolecularIntegrals& mol, double drop) {
  const int n = mol.n_orbitals;
  RawFcidump raw;
  raw.norb = n;
  raw.constant = mol.core_energy;
  int line = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l <= k; ++l) {
          if (i * (i + 1) / 2 + j < k * (k + 1) / 2 + l) continue;
          const double v = 2.0 * mol.two_body(i, j, k, l);
          if (std::abs(v) > drop) raw.entries.push_back({v, i + 1, j + 1, k + 1, l + 1, ++line});
        }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      double t = mol.one_body(i, j);
      for (int k = 0; k < n; ++k) t += mol.two_body(i, k, k, j);
      if (std::abs(t) > drop) raw.entries.push_back({t, i + 1, j + 1, 0, 0, ++line});
    }
  return raw;
}

void write_fcidump(std::ostream& out, const RawFcidump& raw) {
  out << " &FCI NORB=" << raw.norb << ",NELEC=" << raw.nelec << ",MS2=" << raw.ms2 << ",\n";
  out << "  ORBSYM=";
  for (int i = 0; i < raw.norb; ++i) out << "1,";
  out << "\n  ISYM=1,\n &END\n";
  out << std::setprecision(17);
  for (const auto& e : raw.entries) {
    out << ' ' << e.value << ' ' << e.i << ' ' << e.j << ' ' << e.k << ' ' << e.l << '\n';
  }
  out << ' ' << raw.constant << " 0 0 0 0\n";
}

Tensor4 symmetrize_eightfold(const Tensor4& g) {
  const int n = g.dim();
  Tensor4 s(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          s(i, j, k, l) = (g(i, j, k, l) + g(j, i, k, l) + g(i, j, l, k) + g(j, i, l, k) +
                           g(k, l, i, j) + g(l, k, i, j) + g(k, l, j, i) + g(l, k, j, i)) /
                          8.0;
        }
  return s;
}

MolecularIntegrals rotate_orbitals(const MolecularIntegrals& mol, const Matrix& u) {
  MolecularIntegrals out;
  out.n_orbitals = mol.n_orbitals;
  out.core_energy = mol.core_energy;
  out.one_body = u.transpose() * mol.one_body * u;
  out.two_body = kernels::rotate_two_body(mol.two_body, u);
  return out;
}

}  // namespace mtdlcu
