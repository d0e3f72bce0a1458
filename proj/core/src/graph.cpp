/*
 * SPDX-FileCopyrightText: Copyright (c) 2026, The snc-toolkit Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#include <snc/error.hpp>
#include <snc/graph.hpp>

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

namespace snc {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0)
  {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x)
  {
    std::size_t root = x;
    while (parent_[root] != root) { root = parent_[root]; }
    while (parent_[x] != root) {
      const std::size_t next = parent_[x];
      parent_[x]             = root;
      x                      = next;
    }
    return root;
  }

  void unite(std::size_t a, std::size_t b)
  {
    a = find(a);
    b = find(b);
    if (a == b) { return; }
    if (rank_[a] < rank_[b]) { std::swap(a, b); }
    parent_[b] = a;
    if (rank_[a] == rank_[b]) { ++rank_[a]; }
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<unsigned char> rank_;
};

std::vector<std::size_t> label_by_smallest_member(DisjointSets& sets, std::size_t n)
{
  constexpr auto unset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> root_id(n, unset);
  std::vector<std::size_t> out(n);
  std::size_t next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = sets.find(i);
    if (root_id[r] == unset) { root_id[r] = next++; }
    out[i] = root_id[r];
  }
  return out;
}

}  // namespace

NeighborGraph::NeighborGraph(NeighborMap kappa) : kappa_(std::move(kappa))
{
  const std::size_t n = kappa_.size();
  links_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!kappa_[i]) { continue; }
    const std::size_t j = *kappa_[i];
    if (j >= n) {
      throw DataError("neighbor of node " + std::to_string(i) + " is out of range: " +
                      std::to_string(j));
    }
    if (j == i) { throw DataError("node " + std::to_string(i) + " is its own neighbor"); }
    links_.emplace_back(std::min(i, j), std::max(i, j));
  }
  std::sort(links_.begin(), links_.end());
  links_.erase(std::unique(links_.begin(), links_.end()), links_.end());
}

std::vector<Edge> NeighborGraph::edges() const
{
  std::vector<Edge> out = links_;
  std::vector<std::vector<std::size_t>> by_target(kappa_.size());
  for (std::size_t i = 0; i < kappa_.size(); ++i) {
    if (kappa_[i]) { by_target[*kappa_[i]].push_back(i); }
  }
  for (const auto& group : by_target) {
    for (std::size_t a = 0; a < group.size(); ++a) {
      for (std::size_t b = a + 1; b < group.size(); ++b) {
        out.emplace_back(group[a], group[b]);
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

NeighborGraph build_adjacency(NeighborMap kappa) { return NeighborGraph(std::move(kappa)); }

std::vector<std::size_t> connected_components(const NeighborGraph& g)
{
  return connected_components(g.node_count(), g.links());
}

std::vector<std::size_t> connected_components(std::size_t node_count,
                                              const std::vector<Edge>& edges)
{
  DisjointSets sets(node_count);
  for (const auto& [a, b] : edges) {
    sets.unite(a, b);
  }
  return label_by_smallest_member(sets, node_count);
}

}  // namespace snc
