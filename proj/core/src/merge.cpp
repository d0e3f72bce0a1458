/*
 * SPDX-FileCopyrightText: Copyright (c) 2026, The snc-toolkit Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#include <snc/error.hpp>
#include <snc/linalg.hpp>
#include <snc/merge.hpp>
#include <snc/parallel.hpp>

#include <algorithm>
#include <limits>
#include <set>
#include <string>

namespace snc {

namespace {

constexpr auto kNone = std::numeric_limits<std::size_t>::max();

bool may_merge(const Cluster& a, const Cluster& b)
{
  return !(a.label && b.label && *a.label != *b.label);
}

struct Partner {
  float value       = -std::numeric_limits<float>::infinity();
  std::size_t index = kNone;
};

Partner best_partner(const Partition& p, std::size_t row)
{
  Partner best;
  const auto& self = p.clusters[row];
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (j == row || !may_merge(self, p.clusters[j])) { continue; }
    const float v = dot(self.centroid, p.clusters[j].centroid);
    if (v > best.value) {
      best.value = v;
      best.index = j;
    }
  }
  return best;
}

bool pair_better(float v, std::size_t a, std::size_t b, float bv, std::size_t ba, std::size_t bb)
{
  if (v != bv) { return v > bv; }
  return std::pair(a, b) < std::pair(ba, bb);
}

}  // namespace

std::size_t find_start_level(const Hierarchy& h, std::size_t n_o)
{
  if (h.levels.empty()) { throw ArgumentError("empty hierarchy"); }
  const std::size_t n = h.levels.front().size();
  if (n_o >= n) {
    throw ArgumentError("merge start count " + std::to_string(n_o) +
                        " must be below the instance count " + std::to_string(n));
  }
  for (std::size_t t = 0; t + 1 < h.levels.size(); ++t) {
    if (h.levels[t].size() > n_o && h.levels[t + 1].size() <= n_o) { return t; }
  }
  return h.top();
}

std::size_t label_floor(const Partition& p)
{
  std::set<ClassId> labels;
  for (const auto& c : p.clusters) {
    if (c.label) { labels.insert(*c.label); }
  }
  return labels.size();
}

MergeResult one_to_one_merge(Partition p, const GcdDataset& ds, std::size_t target,
                             const MergeObserver& observer)
{
  if (target > p.size()) {
    throw ArgumentError("merge target " + std::to_string(target) + " exceeds cluster count " +
                        std::to_string(p.size()));
  }
  const std::size_t floor = std::max<std::size_t>(label_floor(p), 1);
  if (target < floor) {
    throw ConstraintError("merge target " + std::to_string(target) +
                          " is below the labelled-class floor " + std::to_string(floor));
  }

  MergeResult result;
  result.trace.target = target;
  result.trace.start  = p.size();

  std::vector<Partner> best(p.size());
  parallel_for(p.size(), [&](std::size_t r) { best[r] = best_partner(p, r); }, 8);

  while (p.size() > target) {
    std::size_t a = kNone, b = kNone;
    float value   = -std::numeric_limits<float>::infinity();
    for (std::size_t r = 0; r < p.size(); ++r) {
      if (best[r].index == kNone) { continue; }
      const std::size_t lo = std::min(r, best[r].index);
      const std::size_t hi = std::max(r, best[r].index);
      if (a == kNone || pair_better(best[r].value, lo, hi, value, a, b)) {
        a     = lo;
        b     = hi;
        value = best[r].value;
      }
    }
    if (a == kNone) {
      throw ConstraintError("no admissible pair left to merge at " + std::to_string(p.size()) +
                            " clusters");
    }

    auto members = p.clusters[a].members;
    members.insert(members.end(), p.clusters[b].members.begin(), p.clusters[b].members.end());
    p.clusters[a] = make_cluster(std::move(members), ds);
    p.clusters.erase(p.clusters.begin() + static_cast<std::ptrdiff_t>(b));
    best.erase(best.begin() + static_cast<std::ptrdiff_t>(b));
    for (auto& slot : p.assignment) {
      if (slot == b) {
        slot = a;
      } else if (slot > b) {
        --slot;
      }
    }

    // Refresh partner bookkeeping. Only pairs touching `a` changed.
    best[a] = best_partner(p, a);
    parallel_for(p.size(), [&](std::size_t r) {
      if (r == a) { return; }
      auto& entry = best[r];
      if (entry.index == a || entry.index == b) {
        entry = best_partner(p, r);
        return;
      }
      if (entry.index != kNone && entry.index > b) { --entry.index; }
      if (may_merge(p.clusters[r], p.clusters[a])) {
        const float v = dot(p.clusters[r].centroid, p.clusters[a].centroid);
        if (v > entry.value || (v == entry.value && a < entry.index)) {
          entry.value = v;
          entry.index = a;
        }
      }
    }, 64);

    MergeStep step{a, b, value, p.size(), p.clusters[a].centroid};
    if (observer) { observer(p, step); }
    result.trace.steps.push_back(std::move(step));
  }
  result.partition = std::move(p);
  return result;
}

}  // namespace snc
