/*
 * SPDX-FileCopyrightText: Copyright (c) 2026, The snc-toolkit Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#include <snc/error.hpp>
#include <snc/metrics.hpp>
#include <snc/parallel.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

namespace snc {

namespace {

void validate(const CostMatrix& cost)
{
  if (cost.values.size() != cost.n * cost.n) {
    throw ArgumentError("cost matrix is not square: " + std::to_string(cost.values.size()) +
                        " entries for n = " + std::to_string(cost.n));
  }
  for (double v : cost.values) {
    if (!std::isfinite(v)) { throw ArgumentError("cost matrix has a non-finite entry"); }
  }
}

struct Solved {
  LinearAssignment assignment;
  std::vector<double> u, v;  // row and column potentials
};

// Shortest augmenting path with potentials, O(n^3).
Solved solve(const CostMatrix& cost)
{
  const std::size_t n = cost.n;
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0]           = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0]           = 1;
      const std::size_t i0 = p[j0];
      double delta       = inf;
      std::size_t j1     = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) { continue; }
        const double cur = cost.at(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j]  = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1    = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0]                = p[j1];
      j0                   = j1;
    } while (j0 != 0);
  }

  Solved out;
  out.assignment.row_to_col.assign(n, 0);
  for (std::size_t j = 1; j <= n; ++j) {
    out.assignment.row_to_col[p[j] - 1] = j - 1;
  }
  for (std::size_t i = 0; i < n; ++i) {
    out.assignment.cost += cost.at(i, out.assignment.row_to_col[i]);
  }
  out.u.assign(u.begin() + 1, u.end());
  out.v.assign(v.begin() + 1, v.end());
  return out;
}

class LexRefiner {
 public:
  LexRefiner(const CostMatrix& cost, const Solved& s)
    : cost_(cost), s_(s), n_(cost.n), row_to_col_(s.assignment.row_to_col), col_to_row_(n_),
      fixed_col_(n_, 0), visited_(n_, 0)
  {
    double scale = 1.0;
    for (double c : cost.values) { scale = std::max(scale, std::abs(c)); }
    eps_ = 1e-9 * scale * static_cast<double>(n_ + 1);
    for (std::size_t r = 0; r < n_; ++r) { col_to_row_[row_to_col_[r]] = r; }
  }

  std::vector<std::size_t> run()
  {
    for (std::size_t i = 0; i < n_; ++i) {
      const std::size_t current = row_to_col_[i];
      for (std::size_t j = 0; j < current; ++j) {
        if (fixed_col_[j] || !tight(i, j)) { continue; }
        if (reroute(i, j)) { break; }
      }
      fixed_col_[row_to_col_[i]] = 1;
    }
    return row_to_col_;
  }

 private:
  bool tight(std::size_t r, std::size_t c) const
  {
    return cost_.at(r, c) - s_.u[r] - s_.v[c] <= eps_;
  }

  // Moves row i onto column j by rotating an alternating cycle through unfixed rows.
  bool reroute(std::size_t i, std::size_t j)
  {
    std::fill(visited_.begin(), visited_.end(), 0);
    target_ = row_to_col_[i];
    avoid_  = j;
    path_.clear();
    if (!search(col_to_row_[j])) { return false; }
    // path_ holds (row, new column) pairs from col_to_row_[j] up to target_.
    row_to_col_[i] = j;
    col_to_row_[j] = i;
    for (const auto& [r, c] : path_) {
      row_to_col_[r] = c;
      col_to_row_[c] = r;
    }
    return true;
  }

  bool search(std::size_t r)
  {
    for (std::size_t c = 0; c < n_; ++c) {
      if (c == avoid_ || fixed_col_[c] || visited_[c] || c == row_to_col_[r] || !tight(r, c)) {
        continue;
      }
      visited_[c] = 1;
      if (c == target_ || search(col_to_row_[c])) {
        path_.emplace_back(r, c);
        return true;
      }
    }
    return false;
  }

  const CostMatrix& cost_;
  const Solved& s_;
  std::size_t n_;
  std::vector<std::size_t> row_to_col_, col_to_row_;
  std::vector<char> fixed_col_, visited_;
  std::vector<std::pair<std::size_t, std::size_t>> path_;
  std::size_t target_ = 0, avoid_ = 0;
  double eps_ = 0.0;
};

struct Contingency {
  CostMatrix cost;  // negated co-occurrence counts, zero-padded
  std::vector<std::size_t> clusters;
  std::vector<ClassId> classes;
};

Contingency contingency(std::span<const std::size_t> pred, std::span<const ClassId> truth,
                        std::span<const std::size_t> eval_set)
{
  if (eval_set.empty()) { throw ArgumentError("accuracy needs a nonempty evaluation set"); }
  Contingency out;
  for (std::size_t i : eval_set) {
    out.clusters.push_back(pred[i]);
    out.classes.push_back(truth[i]);
  }
  std::sort(out.clusters.begin(), out.clusters.end());
  out.clusters.erase(std::unique(out.clusters.begin(), out.clusters.end()), out.clusters.end());
  std::sort(out.classes.begin(), out.classes.end());
  out.classes.erase(std::unique(out.classes.begin(), out.classes.end()), out.classes.end());

  const std::size_t m = std::max(out.clusters.size(), out.classes.size());
  out.cost.n          = m;
  out.cost.values.assign(m * m, 0.0);
  for (std::size_t i : eval_set) {
    const auto r = std::lower_bound(out.clusters.begin(), out.clusters.end(), pred[i]) -
                   out.clusters.begin();
    const auto c = std::lower_bound(out.classes.begin(), out.classes.end(), truth[i]) -
                   out.classes.begin();
    out.cost.values[r * m + c] -= 1.0;
  }
  return out;
}

}  // namespace

LinearAssignment hungarian_any(const CostMatrix& cost)
{
  validate(cost);
  if (cost.n == 0) { return {}; }
  return solve(cost).assignment;
}

LinearAssignment hungarian(const CostMatrix& cost)
{
  validate(cost);
  if (cost.n == 0) { return {}; }
  const Solved s = solve(cost);
  LinearAssignment refined;
  refined.row_to_col = LexRefiner(cost, s).run();
  for (std::size_t r = 0; r < cost.n; ++r) {
    refined.cost += cost.at(r, refined.row_to_col[r]);
  }
  double scale = 1.0;
  for (double c : cost.values) { scale = std::max(scale, std::abs(c)); }
  if (std::abs(refined.cost - s.assignment.cost) > 1e-9 * scale * static_cast<double>(cost.n)) {
    return s.assignment;
  }
  return refined;
}

AccReport clustering_accuracy(std::span<const std::size_t> pred, std::span<const ClassId> truth,
                              std::span<const std::size_t> eval_set,
                              const std::set<ClassId>& seen_classes)
{
  const Contingency table = contingency(pred, truth, eval_set);
  const auto matched      = hungarian(table.cost);

  AccReport report;
  report.evaluated = eval_set.size();
  for (std::size_t r = 0; r < table.clusters.size(); ++r) {
    const std::size_t c = matched.row_to_col[r];
    if (c < table.classes.size()) { report.mapping[table.clusters[r]] = table.classes[c]; }
  }

  std::size_t hit = 0, seen_total = 0, seen_hit = 0, unseen_total = 0, unseen_hit = 0;
  for (std::size_t i : eval_set) {
    const auto it     = report.mapping.find(pred[i]);
    const bool correct = it != report.mapping.end() && it->second == truth[i];
    hit += correct;
    if (seen_classes.contains(truth[i])) {
      ++seen_total;
      seen_hit += correct;
    } else {
      ++unseen_total;
      unseen_hit += correct;
    }
  }
  const auto frac = [](std::size_t a, std::size_t b) {
    return static_cast<double>(a) / static_cast<double>(b);
  };
  report.acc_all = frac(hit, eval_set.size());
  if (seen_total) { report.acc_seen = frac(seen_hit, seen_total); }
  if (unseen_total) { report.acc_unseen = frac(unseen_hit, unseen_total); }
  return report;
}

double matched_fraction(std::span<const std::size_t> pred, std::span<const ClassId> truth,
                        std::span<const std::size_t> eval_set)
{
  const Contingency table = contingency(pred, truth, eval_set);
  const auto matched      = hungarian_any(table.cost);
  return -matched.cost / static_cast<double>(eval_set.size());
}

double purity(std::span<const std::size_t> pred, std::span<const ClassId> truth)
{
  if (pred.empty() || pred.size() != truth.size()) {
    throw ArgumentError("purity needs equally sized, nonempty assignments");
  }
  std::vector<std::pair<std::size_t, ClassId>> pairs(pred.size());
  for (std::size_t i = 0; i < pred.size(); ++i) {
    pairs[i] = {pred[i], truth[i]};
  }
  std::sort(pairs.begin(), pairs.end());
  std::size_t total = 0;
  for (std::size_t i = 0; i < pairs.size();) {
    std::size_t best = 0;
    std::size_t j    = i;
    while (j < pairs.size() && pairs[j].first == pairs[i].first) {
      std::size_t k = j;
      while (k < pairs.size() && pairs[k] == pairs[j]) { ++k; }
      best = std::max(best, k - j);
      j    = k;
    }
    total += best;
    i = j;
  }
  return static_cast<double>(total) / static_cast<double>(pred.size());
}

double silhouette(const FeatureMatrix& features, std::span<const std::size_t> assignment,
                  std::span<const std::size_t> population, std::optional<SilhouetteSample> sample)
{
  if (assignment.size() != features.rows()) {
    throw ArgumentError("assignment length does not match the feature matrix");
  }
  std::vector<std::size_t> members;
  if (population.empty()) {
    members.resize(features.rows());
    std::iota(members.begin(), members.end(), std::size_t{0});
  } else {
    members.assign(population.begin(), population.end());
  }

  std::vector<std::size_t> ids;
  ids.reserve(members.size());
  for (std::size_t i : members) { ids.push_back(assignment[i]); }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  if (ids.size() < 2) { throw DataError("silhouette needs at least two clusters"); }

  const std::size_t d = features.cols();
  const std::size_t k = ids.size();
  const auto cluster_of = [&](std::size_t i) {
    return static_cast<std::size_t>(std::lower_bound(ids.begin(), ids.end(), assignment[i]) -
                                    ids.begin());
  };
  std::vector<double> sums(k * d, 0.0);
  std::vector<std::size_t> sizes(k, 0);
  for (std::size_t i : members) {
    const std::size_t c = cluster_of(i);
    ++sizes[c];
    const auto row = features.row(i);
    for (std::size_t j = 0; j < d; ++j) { sums[c * d + j] += row[j]; }
  }

  std::vector<std::size_t> scored = members;
  if (sample && sample->cap < scored.size()) {
    std::vector<std::size_t> picked;
    std::mt19937_64 rng(sample->seed);
    std::sample(scored.begin(), scored.end(), std::back_inserter(picked), sample->cap, rng);
    std::sort(picked.begin(), picked.end());
    scored = std::move(picked);
  }
  if (scored.empty()) { throw ArgumentError("silhouette sample is empty"); }

  std::vector<double> score(scored.size(), 0.0);
  parallel_for(scored.size(), [&](std::size_t s) {
    const std::size_t i   = scored[s];
    const std::size_t own = cluster_of(i);
    if (sizes[own] == 1) { return; }
    const auto row = features.row(i);
    double self = 0.0;
    for (std::size_t j = 0; j < d; ++j) { self += static_cast<double>(row[j]) * row[j]; }
    double a = 0.0;
    double b = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < k; ++c) {
      double acc = 0.0;
      for (std::size_t j = 0; j < d; ++j) { acc += static_cast<double>(row[j]) * sums[c * d + j]; }
      if (c == own) {
        a = 1.0 - (acc - self) / static_cast<double>(sizes[c] - 1);
      } else {
        b = std::min(b, 1.0 - acc / static_cast<double>(sizes[c]));
      }
    }
    const double denom = std::max(a, b);
    score[s]           = denom > 0.0 ? (b - a) / denom : 0.0;
  }, 32);

  double total = 0.0;
  for (double v : score) { total += v; }
  return total / static_cast<double>(scored.size());
}

}  // namespace snc
