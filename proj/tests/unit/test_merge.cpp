/*
 * SPDX-FileCopyrightText: Copyright (c) 2026, The snc-toolkit Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#include <snc/error.hpp>
#include <snc/linalg.hpp>
#include <snc/merge.hpp>

#include <doctest.h>
#include <oracles.hpp>

#include <cmath>
#include <numbers>

using namespace snc;

namespace {

GcdDataset points_at(const std::vector<double>& degrees, std::vector<Label> labels)
{
  std::vector<float> v;
  for (double d : degrees) {
    const double r = d * std::numbers::pi / 180.0;
    v.push_back(static_cast<float>(std::cos(r)));
    v.push_back(static_cast<float>(std::sin(r)));
  }
  return GcdDataset(l2_normalize(FeatureMatrix(degrees.size(), 2, std::move(v))), std::move(labels));
}

Hierarchy with_counts(const std::vector<std::size_t>& counts)
{
  Hierarchy h;
  for (std::size_t p = 0; p < counts.size(); ++p) {
    Partition part;
    part.level = p;
    part.clusters.resize(counts[p]);
    h.levels.push_back(std::move(part));
  }
  return h;
}

bool forbidden(const Cluster& a, const Cluster& b)
{
  return a.label && b.label && *a.label != *b.label;
}

}  // namespace

TEST_SUITE_BEGIN("merge");

TEST_CASE("start level search")
{
  const auto h = with_counts({100, 40, 12, 5});
  CHECK(find_start_level(h, 15) == 1);
  CHECK(find_start_level(h, 12) == 1);
  CHECK(find_start_level(h, 4) == 3);
  CHECK(find_start_level(h, 60) == 0);
  CHECK_THROWS_AS(find_start_level(h, 100), ArgumentError);
}

TEST_CASE("closest pairs merge first")
{
  const auto ds = points_at({0, 10, 90, 95}, {std::nullopt, std::nullopt, std::nullopt, std::nullopt});
  const auto r  = one_to_one_merge(singleton_partition(ds), ds, 2);
  REQUIRE(r.trace.steps.size() == 2);
  CHECK(r.trace.steps[0].first == 2);
  CHECK(r.trace.steps[0].second == 3);
  CHECK(r.trace.steps[1].first == 0);
  CHECK(r.trace.steps[1].second == 1);
  REQUIRE(r.partition.size() == 2);
  CHECK(r.partition.clusters[0].members == std::vector<std::size_t>{0, 1});
  CHECK(r.partition.clusters[1].members == std::vector<std::size_t>{2, 3});
  CHECK(r.partition.assignment == std::vector<std::size_t>{0, 0, 1, 1});
  CHECK(r.trace.start == 4);
  CHECK(r.trace.target == 2);
}

TEST_CASE("different labels never merge")
{
  const auto ds = points_at({0, 5, 90}, {0, 1, std::nullopt});
  const auto r  = one_to_one_merge(singleton_partition(ds), ds, 2);
  REQUIRE(r.trace.steps.size() == 1);
  CHECK(r.trace.steps[0].first == 1);
  CHECK(r.trace.steps[0].second == 2);
  CHECK(r.partition.clusters[1].label == 1);
  CHECK_THROWS_AS(one_to_one_merge(singleton_partition(ds), ds, 1), ConstraintError);
}

TEST_CASE("identity and range errors")
{
  const auto ds = points_at({0, 30, 60}, {std::nullopt, std::nullopt, std::nullopt});
  const auto r  = one_to_one_merge(singleton_partition(ds), ds, 3);
  CHECK(r.trace.steps.empty());
  CHECK(r.partition.size() == 3);
  CHECK_THROWS_AS(one_to_one_merge(singleton_partition(ds), ds, 4), ArgumentError);
  CHECK(label_floor(singleton_partition(points_at({0, 1, 2}, {0, 1, 1}))) == 2);
}

TEST_CASE("every step takes the best allowed pair")
{
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(3, 60)(rng);
    const auto ds       = oracle::random_partial(n, 3, 3, 0.4, rng);
    const Partition start = singleton_partition(ds);
    const std::size_t target = std::max<std::size_t>(label_floor(start), 1);

    Partition prev = start;
    std::size_t steps = 0;
    const auto r = one_to_one_merge(start, ds, target, [&](const Partition& cur, const MergeStep& s) {
      ++steps;
      CHECK(cur.size() + 1 == prev.size());
      CHECK(s.count == cur.size());
      CHECK(s.first < s.second);
      CHECK_FALSE(forbidden(prev.clusters[s.first], prev.clusters[s.second]));
      for (std::size_t a = 0; a < prev.size(); ++a) {
        for (std::size_t b = a + 1; b < prev.size(); ++b) {
          if (forbidden(prev.clusters[a], prev.clusters[b])) { continue; }
          const float v = dot(prev.clusters[a].centroid, prev.clusters[b].centroid);
          CHECK(v <= s.similarity);
          if (v == s.similarity) {
            CHECK(std::pair(s.first, s.second) <= std::pair(a, b));
          }
        }
      }
      std::size_t members = 0;
      for (const auto& c : cur.clusters) {
        members += c.members.size();
        for (std::size_t m : c.members) { CHECK(&cur.clusters[cur.assignment[m]] == &c); }
      }
      CHECK(members == n);
      CHECK(cur.clusters[s.first].centroid == s.centroid);
      prev = cur;
    });
    CHECK(steps == n - target);
    CHECK(r.trace.steps.size() == n - target);
    CHECK(r.partition.size() == target);
  }
}

TEST_CASE("merging is deterministic")
{
  std::mt19937_64 rng(72);
  const auto ds = oracle::random_partial(80, 4, 4, 0.3, rng);
  const auto a  = one_to_one_merge(singleton_partition(ds), ds, 10);
  const auto b  = one_to_one_merge(singleton_partition(ds), ds, 10);
  CHECK(a.partition.assignment == b.partition.assignment);
}

TEST_SUITE_END();
