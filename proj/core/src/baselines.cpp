/*
 * SPDX-FileCopyrightText: Copyright (c) 2026, The snc-toolkit Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#include <snc/baselines.hpp>
#include <snc/error.hpp>
#include <snc/linalg.hpp>
#include <snc/neighbors.hpp>
#include <snc/parallel.hpp>

#include "kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

namespace snc {

Hierarchy finch(const FeatureMatrix& features)
{
  const GcdDataset ds(features);
  if (ds.size() < 2) { throw ArgumentError("clustering needs at least two instances"); }
  if (!features.normalized()) { require_unit_rows(features); }

  Hierarchy h;
  h.levels.push_back(singleton_partition(ds));
  while (h.levels.back().size() > 1) {
    const Partition& cur = h.levels.back();
    const std::size_t d  = features.cols();
    std::vector<float> flat(cur.size() * d);
    for (std::size_t c = 0; c < cur.size(); ++c) {
      std::copy(cur.clusters[c].centroid.begin(), cur.clusters[c].centroid.end(),
                flat.begin() + c * d);
    }
    std::vector<std::size_t> everyone(cur.size());
    std::iota(everyone.begin(), everyone.end(), std::size_t{0});
    const auto first = first_neighbors(PointSet{flat, cur.size(), d}, everyone);

    NeighborMap kappa(first.begin(), first.end());
    const auto component = connected_components(build_adjacency(std::move(kappa)));
    Partition next       = merge_components(cur, component, ds);
    if (next.size() >= cur.size()) { break; }
    h.lambda_trace.emplace_back();
    h.levels.push_back(std::move(next));
  }
  return h;
}

namespace {

using Rng = std::mt19937_64;

struct Lloyd {
  const FeatureMatrix& x;
  std::size_t k;
  std::vector<float> centroids;           // k x d
  std::vector<double> norms;              // per point, squared
  std::vector<std::optional<std::size_t>> pinned;  // per point
  std::vector<double> centroid_norms;              // per centroid, squared

  void refresh_norms()
  {
    const std::size_t d = x.cols();
    centroid_norms.resize(k);
    for (std::size_t c = 0; c < k; ++c) {
      std::span<const float> cen(centroids.data() + c * d, d);
      centroid_norms[c] = dot_precise(cen, cen);
    }
  }

  float distance(std::size_t i, std::size_t c, float cross) const
  {
    return static_cast<float>(norms[i] - 2.0 * cross + centroid_norms[c]);
  }

  float distance(std::size_t i, std::size_t c) const
  {
    const std::size_t d = x.cols();
    return distance(i, c, dot(x.row(i), {centroids.data() + c * d, d}));
  }
};

double squared_distance(std::span<const float> a, std::span<const float> b)
{
  double acc = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double diff = static_cast<double>(a[j]) - b[j];
    acc += diff * diff;
  }
  return acc;
}

std::size_t sample_weighted(const std::vector<double>& weight, std::span<const std::size_t> pool,
                            Rng& rng)
{
  double total = 0.0;
  for (std::size_t i : pool) { total += weight[i]; }
  if (!(total > 0.0)) {
    return pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
  }
  const double target = std::uniform_real_distribution<double>(0.0, total)(rng);
  double run          = 0.0;
  for (std::size_t i : pool) {
    run += weight[i];
    if (run > target && weight[i] > 0.0) { return i; }
  }
  for (auto it = pool.rbegin(); it != pool.rend(); ++it) {
    if (weight[*it] > 0.0) { return *it; }
  }
  return pool.back();
}

// Greedy k-means++ over `pool`, appending to the `existing` centroids already in `centroids`.
// Each step draws 2 + floor(ln k) candidates and keeps the one with the lowest potential.
void seed_plus_plus(const FeatureMatrix& x, std::span<const std::size_t> pool, std::size_t existing,
                    std::size_t k, std::vector<float>& centroids, Rng& rng)
{
  const std::size_t d = x.cols();
  centroids.resize(k * d);
  std::vector<double> nearest(x.rows(), std::numeric_limits<double>::infinity());
  const auto absorb = [&](std::span<const float> cen, std::vector<double>& into) {
    parallel_for(pool.size(), [&](std::size_t s) {
      const std::size_t i = pool[s];
      into[i]             = std::min(into[i], squared_distance(x.row(i), cen));
    }, 512);
  };
  const auto potential = [&](const std::vector<double>& w) {
    double total = 0.0;
    for (std::size_t i : pool) { total += w[i]; }
    return total;
  };
  for (std::size_t c = 0; c < existing; ++c) { absorb({centroids.data() + c * d, d}, nearest); }

  const std::size_t trials = 2 + static_cast<std::size_t>(std::log(static_cast<double>(k)));
  std::vector<double> candidate(x.rows());
  for (std::size_t c = existing; c < k; ++c) {
    std::size_t pick;
    if (c == 0) {
      pick = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
    } else {
      pick = sample_weighted(nearest, pool, rng);
      double best = std::numeric_limits<double>::infinity();
      std::vector<std::size_t> draws{pick};
      for (std::size_t t = 1; t < trials; ++t) { draws.push_back(sample_weighted(nearest, pool, rng)); }
      for (std::size_t cand : draws) {
        candidate = nearest;
        absorb(x.row(cand), candidate);
        const double pot = potential(candidate);
        if (pot < best) {
          best = pot;
          pick = cand;
        }
      }
    }
    std::copy(x.row(pick).begin(), x.row(pick).end(), centroids.begin() + c * d);
    absorb(x.row(pick), nearest);
  }
}

KMeansResult run_lloyd(Lloyd& state, std::size_t max_iter)
{
  const FeatureMatrix& x = state.x;
  const std::size_t n = x.rows(), d = x.cols(), k = state.k;
  KMeansResult out;
  out.assignment.assign(n, std::numeric_limits<std::size_t>::max());
  std::vector<float> dist(n);
  const detail::PackedRows packed_x(x.values(), n, d);
  std::vector<const float*> xptr(n);
  for (std::size_t i = 0; i < n; ++i) { xptr[i] = packed_x.row(i); }

  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    state.refresh_norms();
    std::vector<std::size_t> next(n);
    const detail::PackedRows packed_c(state.centroids, k, d);
    std::vector<const float*> cptr(k);
    for (std::size_t c = 0; c < k; ++c) { cptr[c] = packed_c.row(c); }
    parallel_for((n + detail::kTileRows - 1) / detail::kTileRows, [&](std::size_t blk) {
      const std::size_t i0 = blk * detail::kTileRows;
      const std::size_t ni = std::min(detail::kTileRows, n - i0);
      std::vector<float> tile(detail::kTileRows * detail::kTileCols);
      std::vector<float> best_d(ni, std::numeric_limits<float>::infinity());
      std::vector<std::size_t> best(ni, 0);
      for (std::size_t c0 = 0; c0 < k; c0 += detail::kTileCols) {
        const std::size_t nc = std::min(detail::kTileCols, k - c0);
        detail::dot_block(xptr.data() + i0, ni, cptr.data() + c0, nc, packed_x.stride(), tile.data());
        for (std::size_t r = 0; r < ni; ++r) {
          const std::size_t i = i0 + r;
          for (std::size_t c = 0; c < nc; ++c) {
            const float dc = state.distance(i, c0 + c, tile[r * nc + c]);
            if (dc < best_d[r]) {
              best_d[r] = dc;
              best[r]   = c0 + c;
            }
          }
        }
      }
      for (std::size_t r = 0; r < ni; ++r) {
        const std::size_t i = i0 + r;
        if (state.pinned[i]) {
          next[i] = *state.pinned[i];
          dist[i] = state.distance(i, next[i]);
        } else {
          next[i] = best[r];
          dist[i] = best_d[r];
        }
      }
    }, 1);

    double inertia = 0.0;
    for (std::size_t i = 0; i < n; ++i) { inertia += std::max(0.0f, dist[i]); }
    out.inertia_trace.push_back(inertia);
    out.iterations = iter + 1;
    if (next == out.assignment) {
      out.converged = true;
      break;
    }
    out.assignment = std::move(next);

    std::vector<std::size_t> sizes(k, 0);
    for (std::size_t c : out.assignment) { ++sizes[c]; }
    // Empty clusters take over the farthest free point.
    for (std::size_t c = 0; c < k; ++c) {
      if (sizes[c] != 0) { continue; }
      std::size_t far = n;
      for (std::size_t i = 0; i < n; ++i) {
        if (state.pinned[i] || sizes[out.assignment[i]] <= 1) { continue; }
        if (far == n || dist[i] > dist[far]) { far = i; }
      }
      if (far == n) { continue; }
      --sizes[out.assignment[far]];
      out.assignment[far] = c;
      dist[far]           = 0.0f;
      sizes[c]            = 1;
    }

    std::vector<double> sums(k * d, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto row = x.row(i);
      double* dst    = sums.data() + out.assignment[i] * d;
      for (std::size_t j = 0; j < d; ++j) { dst[j] += row[j]; }
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (sizes[c] == 0) { continue; }
      for (std::size_t j = 0; j < d; ++j) {
        state.centroids[c * d + j] = static_cast<float>(sums[c * d + j] / static_cast<double>(sizes[c]));
      }
    }
  }

  out.inertia = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    out.inertia += squared_distance(x.row(i), {state.centroids.data() + out.assignment[i] * d, d});
  }
  out.centroids = state.centroids;
  return out;
}

std::vector<double> squared_norms(const FeatureMatrix& x)
{
  std::vector<double> out(x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i) { out[i] = dot_precise(x.row(i), x.row(i)); }
  return out;
}

template <class Attempt>
KMeansResult best_of(const KMeansConfig& cfg, Attempt&& attempt)
{
  if (cfg.n_init == 0) { throw ArgumentError("n_init must be >= 1"); }
  std::seed_seq seq{cfg.seed, static_cast<std::uint64_t>(0x6b6d65616e73)};
  std::vector<std::uint64_t> seeds(cfg.n_init);
  seq.generate(seeds.begin(), seeds.end());
  KMeansResult best;
  for (std::size_t r = 0; r < cfg.n_init; ++r) {
    Rng rng(seeds[r]);
    KMeansResult res = attempt(rng);
    if (r == 0 || res.inertia < best.inertia) { best = std::move(res); }
  }
  return best;
}

}  // namespace

KMeansResult kmeans(const FeatureMatrix& features, const KMeansConfig& cfg)
{
  if (cfg.k < 1 || cfg.k > features.rows()) {
    throw ArgumentError("k must lie in [1, n], got " + std::to_string(cfg.k));
  }
  std::vector<std::size_t> pool(features.rows());
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  const auto norms = squared_norms(features);
  return best_of(cfg, [&](Rng& rng) {
    Lloyd state{features, cfg.k, {}, norms, std::vector<std::optional<std::size_t>>(features.rows()), {}};
    seed_plus_plus(features, pool, 0, cfg.k, state.centroids, rng);
    return run_lloyd(state, cfg.max_iter);
  });
}

KMeansResult semi_kmeans(const GcdDataset& ds, const KMeansConfig& cfg)
{
  const std::size_t n_l = ds.num_labelled_classes();
  if (cfg.k < n_l) {
    throw ConstraintError("k = " + std::to_string(cfg.k) + " is below the labelled class count " +
                          std::to_string(n_l));
  }
  if (cfg.k - n_l > ds.unlabelled_indices().size()) {
    throw ArgumentError("not enough unlabelled instances to seed " + std::to_string(cfg.k - n_l) +
                        " free centroids");
  }
  const FeatureMatrix& x = ds.features();
  const std::size_t d    = x.cols();

  std::vector<float> class_means(n_l * d);
  {
    std::vector<double> sums(n_l * d, 0.0);
    std::vector<std::size_t> sizes(n_l, 0);
    for (std::size_t i : ds.labelled_indices()) {
      const auto c = static_cast<std::size_t>(*ds.label(i));
      ++sizes[c];
      for (std::size_t j = 0; j < d; ++j) { sums[c * d + j] += x.row(i)[j]; }
    }
    for (std::size_t c = 0; c < n_l; ++c) {
      for (std::size_t j = 0; j < d; ++j) {
        class_means[c * d + j] = static_cast<float>(sums[c * d + j] / static_cast<double>(sizes[c]));
      }
    }
  }
  std::vector<std::optional<std::size_t>> pinned(x.rows());
  for (std::size_t i : ds.labelled_indices()) { pinned[i] = static_cast<std::size_t>(*ds.label(i)); }
  const auto norms = squared_norms(x);

  return best_of(cfg, [&](Rng& rng) {
    Lloyd state{x, cfg.k, class_means, norms, pinned, {}};
    seed_plus_plus(x, ds.unlabelled_indices(), n_l, cfg.k, state.centroids, rng);
    return run_lloyd(state, cfg.max_iter);
  });
}

}  // namespace snc
