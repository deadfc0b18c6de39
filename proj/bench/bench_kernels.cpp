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

// Serial reference against the OpenMP kernels on problem sizes seen in the
// pipeline. Thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include <random>

#include "mtdlcu/integrals.hpp"
#include "mtdlcu/kernels.hpp"
#include "mtdlcu/majorana.hpp"

namespace {

using namespace mtdlcu;

Tensor4 random_tensor(int n) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> d;
  Tensor4 g(n);
  for (double& x : g.data()) x = d(rng);
  return symmetrize_eightfold(g);
}

Matrix random_rotation(int n) {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> d;
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = d(rng);
  Eigen::HouseholderQR<Matrix> qr(m);
  return qr.householderQ();
}

PauliSum chain_operator(int n) {
  MolecularIntegrals mol{n, 0.0, Matrix::Identity(n, n), random_tensor(n)};
  return pauli_sum_of_hamiltonian(build_majorana(mol));
}

template <Tensor4 (*F)(const Tensor4&, const Matrix&)>
void BM_RotateTwoBody(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Tensor4 g = random_tensor(n);
  const Matrix u = random_rotation(n);
  for (auto _ : state) benchmark::DoNotOptimize(F(g, u));
}
BENCHMARK(BM_RotateTwoBody<kernels::serial::rotate_two_body>)->Name("rotate_two_body/serial")->Arg(8)->Arg(16)->Arg(24);
BENCHMARK(BM_RotateTwoBody<kernels::omp::rotate_two_body>)->Name("rotate_two_body/omp")->Arg(8)->Arg(16)->Arg(24);

template <double (*F)(std::span<const double>)>
void BM_AbsSum(benchmark::State& state) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> d;
  std::vector<double> v(static_cast<std::size_t>(state.range(0)));
  for (double& x : v) x = d(rng);
  for (auto _ : state) benchmark::DoNotOptimize(F(v));
}
BENCHMARK(BM_AbsSum<kernels::serial::abs_sum>)->Name("abs_sum/serial")->Arg(1 << 16)->Arg(1 << 22);
BENCHMARK(BM_AbsSum<kernels::omp::abs_sum>)->Name("abs_sum/omp")->Arg(1 << 16)->Arg(1 << 22);

template <CsrMatrix (*F)(const std::vector<XzGroup>&, int)>
void BM_AssemblePauli(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const PauliSum op = chain_operator(n);
  const auto groups = op.xz_groups();
  for (auto _ : state) benchmark::DoNotOptimize(F(groups, 2 * n));
}
BENCHMARK(BM_AssemblePauli<kernels::serial::assemble_pauli>)->Name("assemble_pauli/serial")->Arg(4)->Arg(6);
BENCHMARK(BM_AssemblePauli<kernels::omp::assemble_pauli>)->Name("assemble_pauli/omp")->Arg(4)->Arg(6);

template <void (*F)(const CsrMatrix&, std::span<const Complex>, std::span<Complex>)>
void BM_Spmv(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const CsrMatrix a = kernels::serial::assemble_pauli(chain_operator(n).xz_groups(), 2 * n);
  std::vector<Complex> x(static_cast<std::size_t>(a.cols), Complex(1.0, 0.0)), y(static_cast<std::size_t>(a.rows));
  for (auto _ : state) {
    F(a, x, y);
    benchmark::DoNotOptimize(y.data());
  }
}
BENCHMARK(BM_Spmv<kernels::serial::spmv>)->Name("spmv/serial")->Arg(4)->Arg(6);
BENCHMARK(BM_Spmv<kernels::omp::spmv>)->Name("spmv/omp")->Arg(4)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
