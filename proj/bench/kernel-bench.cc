// bench/kernel-bench.cc

// Copyright 2026  The dksv Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

// Reference vs. parallel kernels on layer shapes of the tiny and dconv3-small
// models. Thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "numerics/kernels.h"

namespace {

using dksv::kernels::Conv1dDims;

std::vector<double> Random(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

Conv1dDims Dims(const benchmark::State& state) {
  Conv1dDims d;
  d.batch = 4;
  d.in_channels = d.out_channels = static_cast<std::size_t>(state.range(0));
  d.time = 300;
  d.kernel = static_cast<std::size_t>(state.range(1));
  d.dilation = 2;
  return d;
}

template <bool kParallel>
void BM_Conv1dForward(benchmark::State& state) {
  const Conv1dDims d = Dims(state);
  const auto x = Random(d.batch * d.in_channels * d.time, 1);
  const auto w = Random(d.weight_stride(), 2);
  const auto b = Random(d.out_channels, 3);
  std::vector<double> y(d.batch * d.out_channels * d.time);
  for (auto _ : state) {
    if (kParallel) {
      dksv::kernels::parallel::Conv1dForward(d, x, w, b, y);
    } else {
      dksv::kernels::reference::Conv1dForward(d, x, w, b, y);
    }
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * d.batch * d.out_channels * d.in_channels * d.kernel * d.time);
}

template <bool kParallel>
void BM_Conv1dBackward(benchmark::State& state) {
  const Conv1dDims d = Dims(state);
  const auto x = Random(d.batch * d.in_channels * d.time, 1);
  const auto w = Random(d.weight_stride(), 2);
  const auto gy = Random(d.batch * d.out_channels * d.time, 3);
  std::vector<double> gx(x.size()), gw(w.size());
  for (auto _ : state) {
    if (kParallel) {
      dksv::kernels::parallel::Conv1dBackwardInput(d, gy, w, gx);
      dksv::kernels::parallel::Conv1dBackwardWeight(d, gy, x, gw);
    } else {
      dksv::kernels::reference::Conv1dBackwardInput(d, gy, w, gx);
      dksv::kernels::reference::Conv1dBackwardWeight(d, gy, x, gw);
    }
    benchmark::DoNotOptimize(gx.data());
    benchmark::DoNotOptimize(gw.data());
  }
}

template <bool kParallel>
void BM_MatMul(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = Random(n * n, 1), b = Random(n * n, 2);
  std::vector<double> c(n * n);
  for (auto _ : state) {
    if (kParallel) {
      dksv::kernels::parallel::MatMul(n, n, n, a, b, c);
    } else {
      dksv::kernels::reference::MatMul(n, n, n, a, b, c);
    }
    benchmark::DoNotOptimize(c.data());
  }
  state.SetItemsProcessed(state.iterations() * n * n * n);
}

}  // namespace

BENCHMARK(BM_Conv1dForward<false>)->Args({64, 3})->Args({256, 3})->Args({256, 5})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Conv1dForward<true>)->Args({64, 3})->Args({256, 3})->Args({256, 5})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Conv1dBackward<false>)->Args({64, 3})->Args({256, 3})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Conv1dBackward<true>)->Args({64, 3})->Args({256, 3})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MatMul<false>)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MatMul<true>)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
