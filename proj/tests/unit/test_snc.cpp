/*
 * SPDX-FileCopyrightText: Copyright (c) 2026, The snc-toolkit Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#include <snc/baselines.hpp>
#include <snc/error.hpp>
#include <snc/linalg.hpp>
#include <snc/loss.hpp>
#include <snc/metrics.hpp>
#include <snc/parallel.hpp>
#include <snc/snc.hpp>
#include <snc/synthetic.hpp>

#include <doctest.h>
#include <oracles.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

using namespace snc;

namespace {

std::vector<float> at_degrees(double deg)
{
  const double r = deg * std::numbers::pi / 180.0;
  return {static_cast<float>(std::cos(r)), static_cast<float>(std::sin(r))};
}

Cluster cluster_at(std::size_t id, double deg, Label label)
{
  return Cluster{{id}, at_degrees(deg), label};
}

Partition partition_of(std::vector<Cluster> clusters)
{
  Partition p;
  p.assignment.resize(clusters.size());
  for (std::size_t c = 0; c < clusters.size(); ++c) { p.assignment[c] = c; }
  p.clusters = std::move(clusters);
  return p;
}

GcdDataset points_at(const std::vector<double>& degrees, std::vector<Label> labels)
{
  std::vector<float> v;
  for (double d : degrees) {
    const auto p = at_degrees(d);
    v.insert(v.end(), p.begin(), p.end());
  }
  return GcdDataset(l2_normalize(FeatureMatrix(degrees.size(), 2, std::move(v))), std::move(labels));
}

void check_hierarchy(const Hierarchy& h, const GcdDataset& ds)
{
  REQUIRE_FALSE(h.levels.empty());
  CHECK(h.levels[0].size() == ds.size());
  for (std::size_t p = 0; p < h.levels.size(); ++p) {
    const auto& level = h.levels[p];
    CHECK(level.level == p);
    std::vector<int> seen(ds.size(), 0);
    for (std::size_t c = 0; c < level.size(); ++c) {
      const auto& cl = level.clusters[c];
      CHECK_FALSE(cl.members.empty());
      CHECK(std::ranges::is_sorted(cl.members));
      CHECK(std::abs(dot_precise(cl.centroid, cl.centroid) - 1.0) < 1e-4);
      CHECK(cl.label == cluster_label(cl.members, ds));
      for (std::size_t m : cl.members) {
        ++seen[m];
        CHECK(level.assignment[m] == c);
      }
    }
    CHECK(std::ranges::all_of(seen, [](int s) { return s == 1; }));
    if (p > 0) {
      const auto& below = h.levels[p - 1];
      CHECK(level.size() < below.size());
      for (std::size_t c = 0; c < below.size(); ++c) {
        const auto& members = below.clusters[c].members;
        const std::size_t parent = level.assignment[members.front()];
        for (std::size_t m : members) { CHECK(level.assignment[m] == parent); }
      }
    }
  }
}

}  // namespace

TEST_SUITE_BEGIN("snc");

TEST_CASE("chain length rules")
{
  ChainConfig sqrt_rule;
  CHECK(chain_length(9, sqrt_rule) == 3);
  CHECK(chain_length(10, sqrt_rule) == 4);
  CHECK(chain_length(50, sqrt_rule) == 8);
  CHECK(chain_length(1, sqrt_rule) == 1);
  ChainConfig cbrt{ChainRule::cbrt};
  CHECK(chain_length(5, cbrt) == 2);
  CHECK(chain_length(27, cbrt) == 3);
  CHECK(chain_length(1, cbrt) == 1);
  ChainConfig half{ChainRule::half};
  CHECK(chain_length(5, half) == 3);
  CHECK(chain_length(1, half) == 1);
  ChainConfig fixed{ChainRule::fixed, 4};
  CHECK(chain_length(100, fixed) == 4);
  CHECK(chain_length(1, fixed) == 4);
}

TEST_CASE("chains on a line of four clusters")
{
  const auto p = partition_of({cluster_at(0, 0, 0), cluster_at(1, 5, 0), cluster_at(2, 10, 0),
                               cluster_at(3, 15, 0)});
  const auto m = select_neighbors(p, {});
  REQUIRE(m.chains.size() == 2);
  CHECK(m.chains[0].clusters == std::vector<std::size_t>{0, 1});
  CHECK(m.chains[1].clusters == std::vector<std::size_t>{2, 3});
  CHECK(m.kappa[0] == 1u);
  CHECK_FALSE(m.kappa[1].has_value());
  CHECK(m.kappa[2] == 3u);
  CHECK_FALSE(m.kappa[3].has_value());
  CHECK(m.chain_position[3] == 1);
  REQUIRE(m.lambdas.size() == 1);
  CHECK(m.lambdas[0].chain_limit == 2);
  CHECK(oracle::chain_violation(p, m, {}).empty());
}

TEST_CASE("unlabelled clusters pick each other over a distant labelled one")
{
  const auto p = partition_of({cluster_at(0, 0, std::nullopt), cluster_at(1, 5, std::nullopt),
                               cluster_at(2, 90, 0)});
  const auto m = select_neighbors(p, {});
  CHECK(m.kappa[0] == 1u);
  CHECK(m.kappa[1] == 0u);
  CHECK_FALSE(m.kappa[2].has_value());
}

TEST_CASE("no labels reduces to first neighbors")
{
  std::mt19937_64 rng(21);
  const auto x = oracle::random_unit_rows(60, 5, rng);
  const GcdDataset ds(x);
  const auto p = singleton_partition(ds);
  const auto m = select_neighbors(p, {});
  std::vector<std::vector<float>> rows;
  for (std::size_t i = 0; i < 60; ++i) { rows.emplace_back(x.row(i).begin(), x.row(i).end()); }
  for (std::size_t i = 0; i < 60; ++i) { CHECK(m.kappa[i] == oracle::first_neighbor(rows, i)); }
}

TEST_CASE("cluster labels by majority")
{
  const GcdDataset ds(FeatureMatrix(5, 1, {1, 1, 1, 1, 1}, true), {std::nullopt, 1, 1, 0, 2});
  CHECK_FALSE(cluster_label(std::vector<std::size_t>{0}, ds).has_value());
  CHECK(cluster_label(std::vector<std::size_t>{1, 2, 4}, ds) == 1);
  CHECK(cluster_label(std::vector<std::size_t>{3, 4}, ds) == 0);
}

TEST_CASE("one step on small hand-built sets")
{
  {
    std::vector<float> v{1, 0, 0.996f, 0.087f, 0, 1};
    const GcdDataset ds(l2_normalize(FeatureMatrix(3, 2, std::move(v))));
    const auto next = snc_step(singleton_partition(ds), ds, {});
    CHECK(next.size() == 1);
  }
  {
    const auto ds   = points_at({0, 8, 90, 82}, {0, 0, 1, 1});
    const auto next = snc_step(singleton_partition(ds), ds, {});
    REQUIRE(next.size() == 2);
    CHECK(next.clusters[0].members == std::vector<std::size_t>{0, 1});
    CHECK(next.clusters[1].members == std::vector<std::size_t>{2, 3});
    CHECK(next.clusters[0].label == 0);
    CHECK(next.clusters[1].label == 1);
  }
}

TEST_CASE("terminal configurations stop the loop")
{
  const auto ds = points_at({0, 8, 16, 90, 82}, {0, 0, 0, 1, 1});
  const auto h  = run_snc(ds, {ChainRule::fixed, 1});
  CHECK(h.levels.size() == 1);

  const auto h2 = run_snc(ds, {});
  CHECK(h2.levels.back().size() <= 2);
  check_hierarchy(h2, ds);
}

TEST_CASE("max levels caps the hierarchy")
{
  std::mt19937_64 rng(2);
  const GcdDataset ds(oracle::random_unit_rows(400, 3, rng));
  ChainConfig cfg;
  cfg.max_levels = 1;
  CHECK(run_snc(ds, cfg).levels.size() == 2);
}

TEST_CASE("hierarchy invariants and chain rules on random data")
{
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 150)(rng);
    const std::size_t d = std::uniform_int_distribution<std::size_t>(1, 8)(rng);
    const auto ds       = oracle::random_partial(n, d, 4, 0.4, rng);
    const ChainConfig cfg{static_cast<ChainRule>(trial % 4), 2};
    const auto h = run_snc(ds, cfg);
    check_hierarchy(h, ds);
    CHECK(h.lambda_trace.size() == h.levels.size() - 1);
    for (std::size_t p = 0; p + 1 < h.levels.size(); ++p) {
      const auto m = select_neighbors(h.levels[p], cfg);
      CHECK(oracle::chain_violation(h.levels[p], m, cfg) == "");
    }
    const std::size_t floor = std::max<std::size_t>(ds.num_labelled_classes(), 1);
    if (h.levels.back().size() > floor && h.levels.size() > 1) {
      CHECK(snc_step(h.levels.back(), ds, cfg).size() == h.levels.back().size());
    }
  }
}

TEST_CASE("zero labels match the finch baseline")
{
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    const GcdDataset ds(oracle::random_unit_rows(120, 6, rng));
    const auto a = run_snc(ds);
    const auto b = finch(ds.features());
    REQUIRE(a.levels.size() == b.levels.size());
    for (std::size_t p = 0; p < a.levels.size(); ++p) { CHECK(a.levels[p].assignment == b.levels[p].assignment); }
  }
}

TEST_CASE("blobs reach a fully pure level with at least ten clusters")
{
  const auto blobs = make_blobs({});
  const auto h     = run_snc(blobs.data);
  bool found       = false;
  for (const auto& level : h.levels) {
    if (level.size() >= 10 && purity(level.assignment, blobs.truth) == 1.0) { found = true; }
  }
  CHECK(found);
}

TEST_CASE("hierarchy is identical for every thread count")
{
  std::mt19937_64 rng(51);
  const auto ds = oracle::random_partial(2600, 12, 5, 0.3, rng);
  set_thread_count(1);
  const auto a = run_snc(ds);
  set_thread_count(8);
  const auto b = run_snc(ds);
  set_thread_count(0);
  REQUIRE(a.levels.size() == b.levels.size());
  for (std::size_t p = 0; p < a.levels.size(); ++p) {
    CHECK(a.levels[p].assignment == b.levels[p].assignment);
    for (std::size_t c = 0; c < a.levels[p].size(); ++c) {
      CHECK(a.levels[p].clusters[c].centroid == b.levels[p].clusters[c].centroid);
    }
  }
}

TEST_CASE("pseudo labels pick and clamp levels")
{
  std::mt19937_64 rng(61);
  const auto ds = oracle::random_partial(300, 4, 3, 0.2, rng);
  const auto h  = run_snc(ds);
  REQUIRE(h.levels.size() >= 2);
  const auto p1 = pseudo_labels(h, 1);
  CHECK(p1.level == 1);
  CHECK(p1.assignment == h.levels[1].assignment);
  const auto top = pseudo_labels(h, 99);
  CHECK(top.level == h.top());
  CHECK(top.coarse_warning == (h.levels[h.top()].size() < 2 * ds.num_labelled_classes()));
  CHECK_THROWS_AS(pseudo_labels(h, 0), ArgumentError);

  CHECK(refresh_pseudo(ds, {}, 3) == pseudo_labels(h, 3).assignment);
  CHECK_THROWS_AS(refresh_pseudo(ds, {}, 0), ArgumentError);

  const GcdDataset bare(ds.features());
  CHECK(refresh_pseudo(bare, {}, 3) == pseudo_labels(finch(bare.features()), 3).assignment);
}

TEST_SUITE_END();
