/*
 * SPDX-FileCopyrightText: Copyright (c) 2026, The snc-toolkit Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#include <snc/baselines.hpp>
#include <snc/estimate.hpp>
#include <snc/metrics.hpp>
#include <snc/neighbors.hpp>
#include <snc/snc.hpp>
#include <snc/synthetic.hpp>

#include <benchmark/benchmark.h>

#include <numeric>
#include <random>

namespace {

snc::Blobs blobs(std::size_t classes, std::size_t per_class, std::size_t dim)
{
  snc::BlobsConfig cfg;
  cfg.classes              = classes;
  cfg.seen                 = classes / 2;
  cfg.labelled_per_seen    = per_class / 2;
  cfg.unlabelled_per_class = per_class;
  cfg.dim                  = dim;
  return snc::make_blobs(cfg);
}

void BM_FirstNeighbors(benchmark::State& state)
{
  const auto b = blobs(20, static_cast<std::size_t>(state.range(0)) / 20, static_cast<std::size_t>(state.range(1)));
  const auto& x = b.data.features();
  const snc::PointSet pts{x.values(), x.rows(), x.cols()};
  std::vector<std::size_t> all(x.rows());
  std::iota(all.begin(), all.end(), std::size_t{0});
  for (auto _ : state) { benchmark::DoNotOptimize(snc::first_neighbors(pts, all)); }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * x.rows()));
}
BENCHMARK(BM_FirstNeighbors)->Args({2000, 16})->Args({8000, 16})->Args({8000, 128})->Unit(benchmark::kMillisecond);

void BM_RunSnc(benchmark::State& state)
{
  const auto b = blobs(10, static_cast<std::size_t>(state.range(0)) / 10, 16);
  for (auto _ : state) { benchmark::DoNotOptimize(snc::run_snc(b.data)); }
}
BENCHMARK(BM_RunSnc)->Arg(1000)->Arg(5000)->Unit(benchmark::kMillisecond);

void BM_AssignLabels(benchmark::State& state)
{
  const auto b = blobs(10, 500, 32);
  for (auto _ : state) { benchmark::DoNotOptimize(snc::assign_labels(b.data, 10)); }
}
BENCHMARK(BM_AssignLabels)->Unit(benchmark::kMillisecond);

void BM_SemiKMeans(benchmark::State& state)
{
  const auto b = blobs(10, 500, 32);
  for (auto _ : state) { benchmark::DoNotOptimize(snc::semi_kmeans(b.data, {10, 0, 300, 1})); }
}
BENCHMARK(BM_SemiKMeans)->Unit(benchmark::kMillisecond);

void BM_Hungarian(benchmark::State& state)
{
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(7);
  snc::CostMatrix c{n, std::vector<double>(n * n)};
  for (auto& v : c.values) { v = std::uniform_real_distribution<double>(0.0, 1.0)(rng); }
  for (auto _ : state) { benchmark::DoNotOptimize(snc::hungarian(c)); }
}
BENCHMARK(BM_Hungarian)->Arg(10)->Arg(100)->Arg(300)->Unit(benchmark::kMicrosecond);

void BM_Silhouette(benchmark::State& state)
{
  const auto b = blobs(10, static_cast<std::size_t>(state.range(0)) / 10, 32);
  const std::vector<std::size_t> a(b.truth.begin(), b.truth.end());
  for (auto _ : state) { benchmark::DoNotOptimize(snc::silhouette(b.data.features(), a)); }
}
BENCHMARK(BM_Silhouette)->Arg(5000)->Arg(50000)->Unit(benchmark::kMillisecond);

void BM_EstimateK(benchmark::State& state)
{
  const auto b = blobs(10, 100, 16);
  for (auto _ : state) { benchmark::DoNotOptimize(snc::estimate_k(b.data)); }
}
BENCHMARK(BM_EstimateK)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
