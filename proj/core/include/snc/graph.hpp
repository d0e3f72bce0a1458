/*
 * SPDX-FileCopyrightText: Copyright (c) 2026, The snc-toolkit Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace snc {

/// kappa[i] is the single outgoing neighbor of node i, if any.
using NeighborMap = std::vector<std::optional<std::size_t>>;

/// Undirected edge with first < second.
using Edge = std::pair<std::size_t, std::size_t>;

/**
 * Neighbor-link graph: (i, j) is an edge iff j == kappa[i], kappa[j] == i, or
 * kappa[i] == kappa[j] (both present).
 *
 * Only the direct links {i, kappa[i]} are stored. Nodes sharing a neighbor
 * are always connected through that neighbor, so the shared-neighbor edges
 * never change connectivity and are produced on demand by edges().
 */
class NeighborGraph {
 public:
  NeighborGraph() = default;
  /// Throws DataError for out-of-range or self-referential entries.
  explicit NeighborGraph(NeighborMap kappa);

  [[nodiscard]] std::size_t node_count() const noexcept { return kappa_.size(); }
  [[nodiscard]] const NeighborMap& kappa() const noexcept { return kappa_; }
  /// Deduplicated direct links, sorted.
  [[nodiscard]] const std::vector<Edge>& links() const noexcept { return links_; }
  /// Full edge set, all three clauses, sorted and deduplicated.
  [[nodiscard]] std::vector<Edge> edges() const;

 private:
  NeighborMap kappa_;
  std::vector<Edge> links_;
};

NeighborGraph build_adjacency(NeighborMap kappa);

/**
 * Component id per node. Ids are 0..C-1 in order of each component's
 * smallest node index.
 */
std::vector<std::size_t> connected_components(const NeighborGraph& g);

/// Same labelling for an arbitrary edge list over `node_count` nodes.
std::vector<std::size_t> connected_components(std::size_t node_count,
                                              const std::vector<Edge>& edges);

}  // namespace snc
