/*
 * SPDX-FileCopyrightText: Copyright (c) 2026, The snc-toolkit Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#include <snc/error.hpp>
#include <snc/linalg.hpp>
#include <snc/neighbors.hpp>
#include <snc/parallel.hpp>
#include <snc/snc.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

namespace snc {

namespace {

std::vector<float> flatten_centroids(const Partition& p)
{
  const std::size_t d = p.clusters.front().centroid.size();
  std::vector<float> flat(p.size() * d);
  for (std::size_t c = 0; c < p.size(); ++c) {
    std::copy(p.clusters[c].centroid.begin(), p.clusters[c].centroid.end(), flat.begin() + c * d);
  }
  return flat;
}

std::vector<Chain> build_class_chains(const PointSet& pts, ClassId label,
                                      std::vector<std::size_t> pool, std::size_t limit,
                                      NeighborMap& kappa)
{
  std::vector<Chain> chains;
  while (!pool.empty()) {
    Chain chain{label, limit, {pool.front()}};
    pool.erase(pool.begin());
    std::size_t cursor = chain.clusters.front();
    while (chain.clusters.size() < limit && !pool.empty()) {
      const auto x          = pts.row(cursor);
      std::size_t best_pos  = 0;
      float best_val        = dot(x, pts.row(pool[0]));
      for (std::size_t k = 1; k < pool.size(); ++k) {
        const float v = dot(x, pts.row(pool[k]));
        // pool is ascending, so strict > keeps the lowest index on ties
        if (v > best_val) {
          best_val = v;
          best_pos = k;
        }
      }
      const std::size_t next = pool[best_pos];
      pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(best_pos));
      kappa[cursor] = next;
      chain.clusters.push_back(next);
      cursor = next;
    }
    chains.push_back(std::move(chain));
  }
  return chains;
}

}  // namespace

std::size_t chain_length(std::size_t labelled_clusters, const ChainConfig& cfg)
{
  const auto n = static_cast<double>(labelled_clusters);
  std::size_t len = 1;
  switch (cfg.rule) {
    case ChainRule::sqrt: {
      auto r = static_cast<std::size_t>(std::sqrt(n));
      while (r * r < labelled_clusters) { ++r; }
      while (r > 0 && (r - 1) * (r - 1) >= labelled_clusters) { --r; }
      len = r;
      break;
    }
    case ChainRule::cbrt: {
      auto r = static_cast<std::size_t>(std::cbrt(n));
      while (r * r * r < labelled_clusters) { ++r; }
      while (r > 0 && (r - 1) * (r - 1) * (r - 1) >= labelled_clusters) { --r; }
      len = r;
      break;
    }
    case ChainRule::half: len = (labelled_clusters + 1) / 2; break;
    case ChainRule::fixed:
      if (cfg.fixed_length < 1) { throw ArgumentError("fixed chain length must be >= 1"); }
      len = cfg.fixed_length;
      break;
  }
  return std::max<std::size_t>(len, 1);
}

SelectiveNeighborMap select_neighbors(const Partition& p, const ChainConfig& cfg)
{
  const std::size_t count = p.size();
  if (count < 2) { throw ArgumentError("selective neighbors need at least two clusters"); }
  const auto flat = flatten_centroids(p);
  const PointSet pts{flat, count, p.clusters.front().centroid.size()};

  std::map<ClassId, std::vector<std::size_t>> by_class;
  std::vector<std::size_t> unlabelled;
  for (std::size_t c = 0; c < count; ++c) {
    if (p.clusters[c].label) {
      by_class[*p.clusters[c].label].push_back(c);
    } else {
      unlabelled.push_back(c);
    }
  }

  SelectiveNeighborMap out;
  out.kappa.assign(count, std::nullopt);

  std::vector<std::pair<ClassId, std::vector<std::size_t>>> classes(by_class.begin(),
                                                                    by_class.end());
  std::vector<std::vector<Chain>> per_class(classes.size());
  parallel_for(classes.size(), [&](std::size_t k) {
    const auto& [label, members] = classes[k];
    const std::size_t limit      = chain_length(members.size(), cfg);
    per_class[k] = build_class_chains(pts, label, members, limit, out.kappa);
  }, 1);

  for (std::size_t k = 0; k < classes.size(); ++k) {
    out.lambdas.push_back(
      {classes[k].first, classes[k].second.size(), chain_length(classes[k].second.size(), cfg)});
    for (auto& chain : per_class[k]) {
      out.chains.push_back(std::move(chain));
    }
  }

  const auto neighbors = first_neighbors(pts, unlabelled);
  for (std::size_t k = 0; k < unlabelled.size(); ++k) {
    out.kappa[unlabelled[k]] = neighbors[k];
  }

  out.chain_of.assign(count, std::nullopt);
  out.chain_position.assign(count, 0);
  for (std::size_t c = 0; c < out.chains.size(); ++c) {
    const auto& members = out.chains[c].clusters;
    for (std::size_t pos = 0; pos < members.size(); ++pos) {
      out.chain_of[members[pos]]       = c;
      out.chain_position[members[pos]] = pos;
    }
  }
  return out;
}

Label cluster_label(std::span<const std::size_t> members, const GcdDataset& ds)
{
  std::map<ClassId, std::size_t> votes;
  for (std::size_t i : members) {
    if (ds.is_labelled(i)) { ++votes[*ds.label(i)]; }
  }
  Label best;
  std::size_t best_votes = 0;
  for (const auto& [label, n] : votes) {
    if (n > best_votes) {
      best       = label;
      best_votes = n;
    }
  }
  return best;
}

Cluster make_cluster(std::vector<std::size_t> members, const GcdDataset& ds)
{
  std::sort(members.begin(), members.end());
  const auto& features = ds.features();
  std::vector<double> sum(features.cols(), 0.0);
  for (std::size_t i : members) {
    const auto row = features.row(i);
    for (std::size_t c = 0; c < row.size(); ++c) {
      sum[c] += row[c];
    }
  }
  Cluster out;
  if (std::all_of(sum.begin(), sum.end(), [](double v) { return v == 0.0; })) {
    // Members cancel out: fall back to the lowest-index member's direction.
    const auto row = features.row(members.front());
    out.centroid.assign(row.begin(), row.end());
  } else {
    out.centroid = normalized(sum);
  }
  out.label    = cluster_label(members, ds);
  out.members  = std::move(members);
  return out;
}

Partition singleton_partition(const GcdDataset& ds)
{
  const std::size_t n = ds.size();
  Partition p;
  p.clusters.resize(n);
  p.assignment.resize(n);
  parallel_for(n, [&](std::size_t i) {
    p.clusters[i]   = make_cluster({i}, ds);
    p.assignment[i] = i;
  }, 256);
  return p;
}

Partition merge_components(const Partition& p, std::span<const std::size_t> component,
                           const GcdDataset& ds)
{
  std::size_t groups = 0;
  for (std::size_t c : component) {
    groups = std::max(groups, c + 1);
  }
  std::vector<std::vector<std::size_t>> members(groups);
  for (std::size_t c = 0; c < p.size(); ++c) {
    auto& dst = members[component[c]];
    dst.insert(dst.end(), p.clusters[c].members.begin(), p.clusters[c].members.end());
  }
  Partition next;
  next.level = p.level + 1;
  next.clusters.resize(groups);
  parallel_for(groups, [&](std::size_t g) {
    next.clusters[g] = make_cluster(std::move(members[g]), ds);
  }, 8);
  next.assignment.resize(p.instance_count());
  for (std::size_t g = 0; g < groups; ++g) {
    for (std::size_t i : next.clusters[g].members) {
      next.assignment[i] = g;
    }
  }
  return next;
}

namespace {

Partition step_with_trace(const Partition& p, const GcdDataset& ds, const ChainConfig& cfg,
                          std::vector<LambdaEntry>* lambdas)
{
  if (p.size() < 2) { return p; }
  auto neighbors       = select_neighbors(p, cfg);
  const auto graph     = build_adjacency(std::move(neighbors.kappa));
  const auto component = connected_components(graph);
  if (lambdas) { *lambdas = std::move(neighbors.lambdas); }
  return merge_components(p, component, ds);
}

}  // namespace

Partition snc_step(const Partition& p, const GcdDataset& ds, const ChainConfig& cfg)
{
  return step_with_trace(p, ds, cfg, nullptr);
}

Hierarchy run_snc(const GcdDataset& ds, const ChainConfig& cfg)
{
  if (ds.size() < 2) { throw ArgumentError("clustering needs at least two instances"); }
  if (cfg.rule == ChainRule::fixed && cfg.fixed_length < 1) {
    throw ArgumentError("fixed chain length must be >= 1");
  }
  if (!ds.features().normalized()) { require_unit_rows(ds.features()); }

  Hierarchy h;
  h.config               = cfg;
  h.num_labelled_classes = ds.num_labelled_classes();
  h.levels.push_back(singleton_partition(ds));

  const std::size_t floor = std::max<std::size_t>(h.num_labelled_classes, 1);
  while (h.levels.back().size() > floor) {
    if (cfg.max_levels && h.levels.size() > *cfg.max_levels) { break; }
    std::vector<LambdaEntry> lambdas;
    Partition next = step_with_trace(h.levels.back(), ds, cfg, &lambdas);
    if (next.size() >= h.levels.back().size()) { break; }
    h.lambda_trace.push_back(std::move(lambdas));
    h.levels.push_back(std::move(next));
  }
  return h;
}

PseudoLabels pseudo_labels(const Hierarchy& h, std::size_t level)
{
  if (level == 0) {
    throw ArgumentError("level 0 is the singleton partition and yields no positive relations");
  }
  if (h.levels.empty()) { throw ArgumentError("empty hierarchy"); }
  PseudoLabels out;
  out.level          = std::min(level, h.top());
  out.assignment     = h.levels[out.level].assignment;
  out.coarse_warning = h.levels[out.level].size() < 2 * h.num_labelled_classes;
  return out;
}

}  // namespace snc
