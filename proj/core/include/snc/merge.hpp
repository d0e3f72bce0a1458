/*
 * SPDX-FileCopyrightText: Copyright (c) 2026, The snc-toolkit Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <snc/dataset.hpp>
#include <snc/snc.hpp>

#include <cstddef>
#include <functional>
#include <vector>

namespace snc {

struct MergeStep {
  std::size_t first  = 0;  ///< surviving cluster index (the smaller one)
  std::size_t second = 0;  ///< absorbed cluster index, in pre-merge numbering
  float similarity   = 0;
  std::size_t count  = 0;  ///< cluster count after the merge
  std::vector<float> centroid;  ///< centroid of the merged cluster; all others are unchanged
};

struct MergeTrace {
  std::vector<MergeStep> steps;
  std::size_t target = 0;  ///< N_e
  std::size_t start  = 0;  ///< cluster count the merge started from
};

struct MergeResult {
  Partition partition;
  MergeTrace trace;
};

/// Called after every merge with the current partition and the step just taken.
using MergeObserver = std::function<void(const Partition&, const MergeStep&)>;

/**
 * Level t with |levels[t]| > n_o >= |levels[t+1]|, or the top level when even
 * the top exceeds n_o. Throws ArgumentError if n_o >= the instance count.
 */
std::size_t find_start_level(const Hierarchy& h, std::size_t n_o);

/// Number of distinct labels carried by the clusters of `p`.
std::size_t label_floor(const Partition& p);

/**
 * Repeatedly merges the most similar pair of clusters (centroid dot product,
 * ties to the lexicographically smallest pair) until `target` clusters remain.
 * Pairs whose labels are both present and different are never merged.
 */
MergeResult one_to_one_merge(Partition p, const GcdDataset& ds, std::size_t target,
                             const MergeObserver& observer = {});

}  // namespace snc
