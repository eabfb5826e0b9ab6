//
// Copyright (c) 2026 The ctmg authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <benchmark/benchmark.h>

#include "ctmg/blur.hpp"
#include "ctmg/cascade.hpp"
#include "ctmg/krylov.hpp"
#include "ctmg/synthetic.hpp"
#include "ctmg/tensor.hpp"

namespace {

using namespace ctmg;

void BM_einstein_product(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Dims3 d{n, n, 3};
  const Operator6 t = build_toeplitz(gaussian_psf(0.8), d);
  const ImageTensor x = synthetic_scene(n, n, "scene");
  for (auto _ : state) benchmark::DoNotOptimize(einstein_product(t, x));
  state.SetItemsProcessed(state.iterations() * d.count() * d.count());
}
BENCHMARK(BM_einstein_product)->Arg(8)->Arg(12)->Arg(16);

void BM_apply_blur(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const GaussianPsf psf = gaussian_psf(0.9);
  const ImageTensor x = synthetic_scene(n, n, "scene");
  for (auto _ : state) benchmark::DoNotOptimize(apply_blur(psf, x));
  state.SetItemsProcessed(state.iterations() * x.size());
}
BENCHMARK(BM_apply_blur)->Arg(32)->Arg(64)->Arg(128);

void BM_smoother_iteration(benchmark::State& state) {
  const int n = 64;
  const auto kind = static_cast<SmootherKind>(state.range(0));
  const GaussianPsf psf = gaussian_psf(0.9);
  const ImageTensor f = synthetic_scene(n, n, "scene");
  const ImageTensor g = degrade(f, psf, NoiseSpec{0.001, 1});
  const OperatorAction action = make_operator_action(psf);
  for (auto _ : state)
    benchmark::DoNotOptimize(smooth(kind, action, g, g, SolveControl::fixed_count(8)));
}
BENCHMARK(BM_smoother_iteration)
    ->Arg(static_cast<int>(SmootherKind::bicg))
    ->Arg(static_cast<int>(SmootherKind::cgs))
    ->Arg(static_cast<int>(SmootherKind::cr));

void BM_prolong_quadratic(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ImageTensor coarser = synthetic_scene(n / 2, n / 2, "scene");
  const ImageTensor coarse = synthetic_scene(n, n, "scene");
  for (auto _ : state) benchmark::DoNotOptimize(prolong_quadratic(coarse, coarser));
}
BENCHMARK(BM_prolong_quadratic)->Arg(32)->Arg(64);

void BM_pm_denoise(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ImageTensor x = synthetic_scene(n, n, "scene");
  const PmParams p;
  for (auto _ : state) benchmark::DoNotOptimize(pm_denoise(x, p));
}
BENCHMARK(BM_pm_denoise)->Arg(64)->Arg(128);

void BM_coarsest_direct_solve(benchmark::State& state) {
  const Dims3 d{16, 16, 3};
  const Operator6 t = build_toeplitz(gaussian_psf(0.9), d);
  ImageTensor g = synthetic_scene(16, 16, "scene");
  for (auto _ : state) benchmark::DoNotOptimize(direct_solve(t, g));
}
BENCHMARK(BM_coarsest_direct_solve);

void BM_full_cascade(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const bool economic = state.range(1) != 0;
  const ImageTensor f = synthetic_scene(n, n, "scene");
  const ImageTensor g = degrade(f, gaussian_psf(0.9), NoiseSpec{0.001, 1});
  for (auto _ : state) {
    if (economic)
      benchmark::DoNotOptimize(ectmg_restore(g, 0.9, 4, SmootherKind::cr));
    else
      benchmark::DoNotOptimize(ctmg_restore(g, 0.9, 4, SmootherKind::cr));
  }
}
BENCHMARK(BM_full_cascade)->Args({64, 0})->Args({64, 1})->Args({128, 0})->Args({128, 1});

}  // namespace

BENCHMARK_MAIN();
