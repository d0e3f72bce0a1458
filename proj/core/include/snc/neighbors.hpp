/*
 * SPDX-FileCopyrightText: Copyright (c) 2026, The snc-toolkit Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace snc {

/// Row-major view over `rows` unit vectors of dimension `cols`.
struct PointSet {
  std::span<const float> values;
  std::size_t rows = 0;
  std::size_t cols = 0;

  [[nodiscard]] std::span<const float> row(std::size_t i) const
  {
    return values.subspan(i * cols, cols);
  }
};

/**
 * Exact first neighbor for every query: argmax over j != q of dot(q, j),
 * ties broken by the lowest j. Requires at least two points.
 *
 * Large sets are searched with a pivot-bounded scan (q.x <= q.p + |x - p|
 * for unit q), which skips whole groups of points but returns exactly what
 * the brute-force scan returns.
 */
std::vector<std::size_t> first_neighbors(const PointSet& points,
                                         std::span<const std::size_t> queries);

/// Reference brute-force scan with identical semantics.
std::vector<std::size_t> first_neighbors_brute(const PointSet& points,
                                               std::span<const std::size_t> queries);

}  // namespace snc
