/*
 * SPDX-FileCopyrightText: Copyright (c) 2026, The snc-toolkit Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <snc/dataset.hpp>
#include <snc/graph.hpp>

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace snc {

struct Cluster {
  std::vector<std::size_t> members;  ///< sorted, unique instance ids
  std::vector<float> centroid;       ///< unit-norm mean of member features
  Label label;                       ///< majority label of labelled members, if any
};

/// One level of the hierarchy.
struct Partition {
  std::vector<Cluster> clusters;
  std::vector<std::size_t> assignment;  ///< instance -> cluster index
  std::size_t level = 0;

  [[nodiscard]] std::size_t size() const noexcept { return clusters.size(); }
  [[nodiscard]] std::size_t instance_count() const noexcept { return assignment.size(); }
};

enum class ChainRule { sqrt, cbrt, half, fixed };

struct ChainConfig {
  ChainRule rule           = ChainRule::sqrt;
  std::size_t fixed_length = 1;              ///< used by ChainRule::fixed, must be >= 1
  std::optional<std::size_t> max_levels;     ///< cap on levels built above the singletons
};

/// Chain length per class, recorded for every level.
struct LambdaEntry {
  ClassId label           = 0;
  std::size_t clusters    = 0;  ///< labelled clusters of this class at the level
  std::size_t chain_limit = 0;
};

struct Hierarchy {
  std::vector<Partition> levels;  ///< levels[0] is the singleton partition
  ChainConfig config;
  std::size_t num_labelled_classes = 0;
  /// lambda_trace[p] lists the chain limits used to build levels[p + 1].
  std::vector<std::vector<LambdaEntry>> lambda_trace;

  [[nodiscard]] std::size_t top() const noexcept { return levels.size() - 1; }
};

struct Chain {
  ClassId label = 0;
  std::size_t limit = 0;
  std::vector<std::size_t> clusters;  ///< in link order; the last one is terminal
};

struct SelectiveNeighborMap {
  NeighborMap kappa;
  std::vector<Chain> chains;
  std::vector<std::optional<std::size_t>> chain_of;  ///< cluster -> chain index
  std::vector<std::size_t> chain_position;           ///< cluster -> position in its chain
  std::vector<LambdaEntry> lambdas;
};

/// Chain limit for a class with `labelled_clusters` labelled clusters. Always >= 1.
std::size_t chain_length(std::size_t labelled_clusters, const ChainConfig& cfg);

/**
 * Selective neighbors of every cluster in `p`.
 *
 * Labelled clusters form disjoint same-class chains: a chain starts at the
 * lowest-index cluster still in its class pool and repeatedly links the
 * cursor to the most similar remaining pool member until the chain holds the
 * class's limit. The tail is terminal. Unlabelled clusters point at their
 * most similar cluster overall. Ties go to the lowest index.
 */
SelectiveNeighborMap select_neighbors(const Partition& p, const ChainConfig& cfg);

/// Majority class among labelled members (lowest id wins ties); none if no member is labelled.
Label cluster_label(std::span<const std::size_t> members, const GcdDataset& ds);

/// Builds a cluster with centroid and label from its member ids (sorted on return).
Cluster make_cluster(std::vector<std::size_t> members, const GcdDataset& ds);

Partition singleton_partition(const GcdDataset& ds);

/// Groups clusters of `p` by component id into the next partition.
Partition merge_components(const Partition& p, std::span<const std::size_t> component,
                           const GcdDataset& ds);

Partition snc_step(const Partition& p, const GcdDataset& ds, const ChainConfig& cfg);

/**
 * Bottom-up hierarchy. Stops once the count is at most max(N_L, 1), when a
 * step makes no progress, or after cfg.max_levels steps.
 */
Hierarchy run_snc(const GcdDataset& ds, const ChainConfig& cfg = {});

struct PseudoLabels {
  std::vector<std::size_t> assignment;
  std::size_t level = 0;     ///< level actually used after clamping
  bool coarse_warning = false;  ///< cluster count below twice the labelled class count
};

/// Assignment at `level` (clamped to the top). Level 0 is rejected.
PseudoLabels pseudo_labels(const Hierarchy& h, std::size_t level = 3);

}  // namespace snc
