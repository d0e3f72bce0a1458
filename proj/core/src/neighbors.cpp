/*
 * SPDX-FileCopyrightText: Copyright (c) 2026, The snc-toolkit Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

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

namespace snc {

namespace {

// Below this size the pivot bookkeeping costs more than it saves.
constexpr std::size_t kBruteForceLimit = 2048;
// Pivot bounds stop pruning anything in higher dimensions.
constexpr std::size_t kPivotMaxDim = 32;
// Covers float rounding in the kernel and in the bound itself.
constexpr float kBoundSlack = 1e-4f;

struct Best {
  float value      = -std::numeric_limits<float>::infinity();
  std::size_t index = std::numeric_limits<std::size_t>::max();

  void offer(float v, std::size_t j)
  {
    if (v > value || (v == value && j < index)) {
      value = v;
      index = j;
    }
  }
};

struct PivotIndex {
  std::vector<std::size_t> pivots;
  std::vector<std::vector<std::size_t>> members;  // per pivot, ascending
  std::vector<float> radius;                      // per pivot
  std::vector<float> offset;                      // per point, |x - p|
  std::vector<float> pivot_dot;                   // rows x pivots
};

PivotIndex build_pivots(const PointSet& pts)
{
  PivotIndex idx;
  const std::size_t n = pts.rows;
  const auto g        = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(0x5eedu + n);
  std::shuffle(order.begin(), order.end(), rng);
  idx.pivots.assign(order.begin(), order.begin() + g);
  std::sort(idx.pivots.begin(), idx.pivots.end());

  idx.pivot_dot.resize(n * g);
  std::vector<std::size_t> owner(n);
  idx.offset.resize(n);
  parallel_for(n, [&](std::size_t i) {
    Best best;
    const auto x = pts.row(i);
    for (std::size_t p = 0; p < g; ++p) {
      const float v           = dot(x, pts.row(idx.pivots[p]));
      idx.pivot_dot[i * g + p] = v;
      best.offer(v, p);
    }
    owner[i]      = best.index;
    const auto pv = pts.row(idx.pivots[best.index]);
    double sq     = 0.0;
    for (std::size_t c = 0; c < pts.cols; ++c) {
      const double diff = static_cast<double>(x[c]) - pv[c];
      sq += diff * diff;
    }
    idx.offset[i] = static_cast<float>(std::sqrt(sq));
  });

  idx.members.resize(g);
  idx.radius.assign(g, 0.0f);
  for (std::size_t i = 0; i < n; ++i) {
    idx.members[owner[i]].push_back(i);
    idx.radius[owner[i]] = std::max(idx.radius[owner[i]], idx.offset[i]);
  }
  return idx;
}

}  // namespace

std::vector<std::size_t> first_neighbors_brute(const PointSet& pts,
                                               std::span<const std::size_t> queries)
{
  if (pts.rows < 2) { throw ArgumentError("first neighbor needs at least two points"); }
  std::vector<std::size_t> out(queries.size());
  parallel_for(queries.size(), [&](std::size_t k) {
    const std::size_t q = queries[k];
    const auto x        = pts.row(q);
    Best best;
    for (std::size_t j = 0; j < pts.rows; ++j) {
      if (j != q) { best.offer(dot(x, pts.row(j)), j); }
    }
    out[k] = best.index;
  }, 16);
  return out;
}

namespace {

std::vector<const float*> row_pointers(const detail::PackedRows& packed)
{
  std::vector<const float*> ptrs(packed.rows());
  for (std::size_t i = 0; i < packed.rows(); ++i) { ptrs[i] = packed.row(i); }
  return ptrs;
}

// Every pair is evaluated once and offered to both endpoints.
std::vector<Best> tiled_all_pairs(const PointSet& pts)
{
  using detail::kTileCols;
  using detail::kTileRows;
  const detail::PackedRows packed(pts.values, pts.rows, pts.cols);
  const auto ptrs         = row_pointers(packed);
  const std::size_t n     = pts.rows;
  const std::size_t rblk  = (n + kTileRows - 1) / kTileRows;
  const std::size_t group = std::min(rblk, std::max<std::size_t>(1, thread_count()) * 4);

  std::vector<Best> row_best(n);
  std::vector<std::vector<Best>> col_best(group);
  parallel_for(group, [&](std::size_t g) {
    auto& cols = col_best[g];
    cols.assign(n, Best{});
    std::vector<float> tile(kTileRows * kTileCols);
    for (std::size_t blk = g; blk < rblk; blk += group) {
      const std::size_t i0 = blk * kTileRows;
      const std::size_t ni = std::min(kTileRows, n - i0);
      for (std::size_t j0 = i0; j0 < n; j0 += kTileCols) {
        const std::size_t nj = std::min(kTileCols, n - j0);
        detail::dot_block(ptrs.data() + i0, ni, ptrs.data() + j0, nj, packed.stride(), tile.data());
        for (std::size_t r = 0; r < ni; ++r) {
          const std::size_t i = i0 + r;
          for (std::size_t c = 0; c < nj; ++c) {
            const std::size_t j = j0 + c;
            if (j <= i) { continue; }
            const float v = tile[r * nj + c];
            row_best[i].offer(v, j);
            cols[j].offer(v, i);
          }
        }
      }
    }
  }, 1);

  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& cols : col_best) { row_best[i].offer(cols[i].value, cols[i].index); }
  }
  return row_best;
}

std::vector<std::size_t> tiled_queries(const PointSet& pts, std::span<const std::size_t> queries)
{
  using detail::kTileCols;
  using detail::kTileRows;
  const detail::PackedRows packed(pts.values, pts.rows, pts.cols);
  const auto ptrs     = row_pointers(packed);
  const std::size_t n = pts.rows;
  const std::size_t m = queries.size();
  std::vector<std::size_t> out(m);
  parallel_for((m + kTileRows - 1) / kTileRows, [&](std::size_t blk) {
    const std::size_t k0 = blk * kTileRows;
    const std::size_t nk = std::min(kTileRows, m - k0);
    std::vector<const float*> qrows(nk);
    for (std::size_t r = 0; r < nk; ++r) { qrows[r] = ptrs[queries[k0 + r]]; }
    std::vector<Best> best(nk);
    std::vector<float> tile(kTileRows * kTileCols);
    for (std::size_t j0 = 0; j0 < n; j0 += kTileCols) {
      const std::size_t nj = std::min(kTileCols, n - j0);
      detail::dot_block(qrows.data(), nk, ptrs.data() + j0, nj, packed.stride(), tile.data());
      for (std::size_t r = 0; r < nk; ++r) {
        const std::size_t q = queries[k0 + r];
        for (std::size_t c = 0; c < nj; ++c) {
          if (j0 + c != q) { best[r].offer(tile[r * nj + c], j0 + c); }
        }
      }
    }
    for (std::size_t r = 0; r < nk; ++r) { out[k0 + r] = best[r].index; }
  }, 1);
  return out;
}

std::vector<std::size_t> pivot_search(const PointSet& pts, std::span<const std::size_t> queries)
{
  const PivotIndex idx = build_pivots(pts);
  const std::size_t g  = idx.pivots.size();
  std::vector<std::size_t> out(queries.size());
  parallel_for(queries.size(), [&](std::size_t k) {
    const std::size_t q = queries[k];
    const auto x        = pts.row(q);
    double qnorm_sq     = 0.0;
    for (float v : x) { qnorm_sq += static_cast<double>(v) * v; }
    const auto qnorm = static_cast<float>(std::sqrt(qnorm_sq));
    const float* qp  = idx.pivot_dot.data() + q * g;
    std::vector<std::pair<float, std::size_t>> order(g);
    for (std::size_t p = 0; p < g; ++p) {
      order[p] = {qp[p] + qnorm * idx.radius[p], p};
    }
    std::sort(order.begin(), order.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    Best best;
    for (const auto& [bound, p] : order) {
      if (bound + kBoundSlack < best.value) { break; }
      for (std::size_t j : idx.members[p]) {
        if (j == q) { continue; }
        if (qp[p] + qnorm * idx.offset[j] + kBoundSlack < best.value) { continue; }
        best.offer(dot(x, pts.row(j)), j);
      }
    }
    out[k] = best.index;
  }, 16);
  return out;
}

}  // namespace

std::vector<std::size_t> first_neighbors(const PointSet& pts, std::span<const std::size_t> queries)
{
  if (pts.rows < 2) { throw ArgumentError("first neighbor needs at least two points"); }
  if (pts.rows > kBruteForceLimit && pts.cols <= kPivotMaxDim && queries.size() * 8 >= pts.rows) {
    return pivot_search(pts, queries);
  }
  // Past half the points, one symmetric pass is cheaper than a pass per query.
  if (queries.size() * 2 <= pts.rows) { return tiled_queries(pts, queries); }
  const auto best = tiled_all_pairs(pts);
  std::vector<std::size_t> out(queries.size());
  for (std::size_t k = 0; k < queries.size(); ++k) { out[k] = best[queries[k]].index; }
  return out;
}

}  // namespace snc
