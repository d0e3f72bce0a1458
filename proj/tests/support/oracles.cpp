/*
 * SPDX-FileCopyrightText: Copyright (c) 2026, The snc-toolkit Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

namespace snc::oracle {

std::vector<std::size_t> reachability_components(std::size_t n, const std::vector<Edge>& edges)
{
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) { reach[i][i] = true; }
  for (const auto& [a, b] : edges) { reach[a][b] = reach[b][a] = true; }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!reach[i][k]) { continue; }
      for (std::size_t j = 0; j < n; ++j) {
        if (reach[k][j]) { reach[i][j] = true; }
      }
    }
  }
  std::vector<std::size_t> label(n, n);
  std::size_t next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (label[i] != n) { continue; }
    for (std::size_t j = i; j < n; ++j) {
      if (reach[i][j]) { label[j] = next; }
    }
    ++next;
  }
  return label;
}

BruteAssignment brute_assignment(const std::vector<double>& cost, std::size_t n)
{
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  BruteAssignment best;
  best.cost = std::numeric_limits<double>::infinity();
  do {
    double c = 0.0;
    for (std::size_t r = 0; r < n; ++r) { c += cost[r * n + perm[r]]; }
    if (c < best.cost) {
      best.cost       = c;
      best.row_to_col = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

double silhouette_direct(const FeatureMatrix& x, const std::vector<std::size_t>& assignment,
                         const std::vector<std::size_t>& population)
{
  const auto dist = [&](std::size_t i, std::size_t j) {
    double s = 0.0;
    for (std::size_t c = 0; c < x.cols(); ++c) { s += static_cast<double>(x.row(i)[c]) * x.row(j)[c]; }
    return 1.0 - s;
  };
  double total = 0.0;
  for (std::size_t i : population) {
    std::map<std::size_t, std::pair<double, std::size_t>> per;  // cluster -> (sum, count)
    for (std::size_t j : population) {
      if (j == i) { continue; }
      auto& e = per[assignment[j]];
      e.first += dist(i, j);
      ++e.second;
    }
    const auto own = per.find(assignment[i]);
    if (own == per.end()) { continue; }  // singleton: contributes 0
    const double a = own->second.first / static_cast<double>(own->second.second);
    double b       = std::numeric_limits<double>::infinity();
    for (const auto& [c, e] : per) {
      if (c != assignment[i]) { b = std::min(b, e.first / static_cast<double>(e.second)); }
    }
    const double m = std::max(a, b);
    total += m > 0.0 ? (b - a) / m : 0.0;
  }
  return total / static_cast<double>(population.size());
}

double sup_con_term(const FeatureMatrix& z, std::size_t i, const std::vector<std::size_t>& positives,
                    const std::vector<std::size_t>& scope, double tau)
{
  const auto sim = [&](std::size_t a, std::size_t b) {
    long double s = 0.0L;
    for (std::size_t c = 0; c < z.cols(); ++c) { s += static_cast<long double>(z.row(a)[c]) * z.row(b)[c]; }
    return s / tau;
  };
  long double denom = 0.0L;
  for (std::size_t a : scope) {
    if (a != i) { denom += std::exp(sim(i, a)); }
  }
  long double acc = 0.0L;
  for (std::size_t p : positives) { acc += std::log(std::exp(sim(i, p)) / denom); }
  return static_cast<double>(-acc / static_cast<long double>(positives.size()));
}

std::size_t first_neighbor(const std::vector<std::vector<float>>& rows, std::size_t i)
{
  std::size_t best = rows.size();
  double best_v    = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < rows.size(); ++j) {
    if (j == i) { continue; }
    double v = 0.0;
    for (std::size_t c = 0; c < rows[i].size(); ++c) { v += static_cast<double>(rows[i][c]) * rows[j][c]; }
    if (v > best_v) {
      best_v = v;
      best   = j;
    }
  }
  return best;
}

std::string chain_violation(const Partition& p, const SelectiveNeighborMap& m, const ChainConfig& cfg)
{
  const std::size_t n = p.size();
  std::map<ClassId, std::size_t> per_class;
  for (const auto& c : p.clusters) {
    if (c.label) { ++per_class[*c.label]; }
  }
  std::vector<std::size_t> in_degree(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& k = m.kappa[i];
    if (!p.clusters[i].label || !k) { continue; }
    if (!p.clusters[*k].label) { return "labelled cluster " + std::to_string(i) + " points at an unlabelled one"; }
    if (*p.clusters[*k].label != *p.clusters[i].label) {
      return "cluster " + std::to_string(i) + " links across classes";
    }
    ++in_degree[*k];
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (p.clusters[i].label && in_degree[i] > 1) {
      return "cluster " + std::to_string(i) + " is the target of several labelled clusters";
    }
  }
  // Walk every chain from its head; length must respect the class limit.
  std::vector<bool> visited(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (!p.clusters[i].label || in_degree[i] != 0) { continue; }
    const std::size_t limit = chain_length(per_class[*p.clusters[i].label], cfg);
    std::size_t len = 0, cur = i;
    while (true) {
      if (visited[cur]) { return "chain through cluster " + std::to_string(cur) + " revisits a node"; }
      visited[cur] = true;
      ++len;
      if (!m.kappa[cur]) { break; }
      cur = *m.kappa[cur];
    }
    if (len > limit) {
      return "chain from " + std::to_string(i) + " has length " + std::to_string(len) + " > " +
             std::to_string(limit);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (p.clusters[i].label && !visited[i]) { return "cluster " + std::to_string(i) + " sits on a cycle"; }
  }
  // Unlabelled clusters take their plain first neighbor.
  std::vector<std::vector<float>> rows;
  for (const auto& c : p.clusters) { rows.push_back(c.centroid); }
  for (std::size_t i = 0; i < n; ++i) {
    if (p.clusters[i].label) { continue; }
    if (!m.kappa[i]) { return "unlabelled cluster " + std::to_string(i) + " has no neighbor"; }
    const std::size_t want = first_neighbor(rows, i);
    const auto dot_d = [&](std::size_t a, std::size_t b) {
      double v = 0.0;
      for (std::size_t c = 0; c < rows[a].size(); ++c) { v += static_cast<double>(rows[a][c]) * rows[b][c]; }
      return v;
    };
    if (*m.kappa[i] != want && std::abs(dot_d(i, *m.kappa[i]) - dot_d(i, want)) > 1e-5) {
      return "unlabelled cluster " + std::to_string(i) + " does not point at its first neighbor";
    }
  }
  return {};
}

FeatureMatrix random_unit_rows(std::size_t n, std::size_t d, std::mt19937_64& rng)
{
  std::normal_distribution<float> g;
  std::vector<float> v(n * d);
  for (std::size_t i = 0; i < n; ++i) {
    double norm = 0.0;
    do {
      norm = 0.0;
      for (std::size_t c = 0; c < d; ++c) {
        v[i * d + c] = g(rng);
        norm += static_cast<double>(v[i * d + c]) * v[i * d + c];
      }
    } while (norm < 1e-12);
  }
  return l2_normalize(FeatureMatrix(n, d, std::move(v)));
}

GcdDataset random_partial(std::size_t n, std::size_t d, std::size_t classes, double labelled_share,
                          std::mt19937_64& rng)
{
  FeatureMatrix x = random_unit_rows(n, d, rng);
  std::bernoulli_distribution labelled(labelled_share);
  std::uniform_int_distribution<int> cls(0, static_cast<int>(classes) - 1);
  std::vector<Label> raw(n);
  for (auto& l : raw) {
    if (labelled(rng)) { l = cls(rng); }
  }
  std::map<ClassId, ClassId> remap;
  for (auto& l : raw) {
    if (!l) { continue; }
    auto [it, fresh] = remap.emplace(*l, static_cast<ClassId>(remap.size()));
    l = it->second;
  }
  return GcdDataset(std::move(x), std::move(raw));
}

}  // namespace snc::oracle
