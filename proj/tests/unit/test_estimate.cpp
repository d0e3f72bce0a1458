/*
 * SPDX-FileCopyrightText: Copyright (c) 2026, The snc-toolkit Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#include <snc/error.hpp>
#include <snc/estimate.hpp>
#include <snc/synthetic.hpp>

#include <doctest.h>

#include <algorithm>

using namespace snc;

namespace {

const Blobs& blobs()
{
  static const Blobs b = make_blobs({});
  return b;
}

Partition from_assignment(std::vector<std::size_t> a)
{
  Partition p;
  p.clusters.resize(*std::max_element(a.begin(), a.end()) + 1);
  p.assignment = std::move(a);
  return p;
}

// Index that maximizes the scaled product, fewer clusters on ties.
std::size_t best_scaled(const std::vector<ScanPoint>& pts)
{
  std::vector<double> acc, sil;
  for (const auto& p : pts) {
    acc.push_back(p.score.acc_val);
    sil.push_back(p.score.sil_u);
  }
  const auto as = min_max_scale(acc), ss = min_max_scale(sil);
  std::size_t best = 0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double cur = as[i] * ss[i], top = as[best] * ss[best];
    if (cur > top || (cur == top && pts[i].count < pts[best].count)) { best = i; }
  }
  return best;
}

}  // namespace

TEST_SUITE_BEGIN("estimate");

TEST_CASE("min-max scaling")
{
  const auto s = min_max_scale({2.0, 4.0, 3.0});
  CHECK(s == std::vector<double>{0.0, 1.0, 0.5});
  CHECK(min_max_scale({0.3, 0.3}) == std::vector<double>{1.0, 1.0});
  CHECK(min_max_scale({}).empty());
}

TEST_CASE("reference components")
{
  const auto& b = blobs();
  const auto split = split_labelled(b.data, 0.8, 0);
  std::vector<std::size_t> truth(b.truth.begin(), b.truth.end());
  const auto exact = reference_components(from_assignment(truth), b.data, split, {});
  CHECK(exact.acc_val == 1.0);
  CHECK(exact.sil_u > 0.5);
  CHECK_FALSE(exact.s_scaled.has_value());

  const FeatureMatrix x(6, 2, {1, 0, 1, 0, 1, 0, 1, 0, 0, 1, 0, 1}, true);
  const GcdDataset two(x, {0, 0, std::nullopt, std::nullopt, std::nullopt, std::nullopt});
  const auto s2 = split_labelled(two, 0.5, 0);
  CHECK(reference_components(from_assignment({0, 0, 0, 0, 1, 1}), two, s2, {}).sil_u == 1.0);
  CHECK_THROWS_AS(reference_components(from_assignment({0, 0, 0, 0, 0, 0}), two, s2, {}), DataError);
}

TEST_CASE("estimate on blobs")
{
  const auto& b = blobs();
  const auto est = estimate_k(b.data);
  CHECK(est.k >= 8);
  CHECK(est.k <= 12);
  CHECK(est.k >= est.n_e);
  CHECK(est.k <= est.n_o);

  REQUIRE(est.levels.size() >= 2);
  CHECK(est.levels[best_scaled(est.levels)].level == est.chosen_level);
  REQUIRE_FALSE(est.scan.empty());
  CHECK(est.scan[best_scaled(est.scan)].count == est.k);
  for (const auto& p : est.scan) {
    CHECK(p.count <= est.n_o);
    CHECK(p.count >= est.n_e);
    CHECK(p.score.s_scaled.has_value());
  }
  CHECK(std::any_of(est.scan.begin(), est.scan.end(), [&](const ScanPoint& p) { return p.count == est.k; }));

  const auto again = estimate_k(b.data);
  CHECK(again.k == est.k);
  CHECK(again.chosen_level == est.chosen_level);
  REQUIRE(again.scan.size() == est.scan.size());
  for (std::size_t i = 0; i < est.scan.size(); ++i) {
    CHECK(again.scan[i].score.sil_u == est.scan[i].score.sil_u);
  }
}

TEST_CASE("estimate errors")
{
  std::vector<float> same(40 * 3, 0.0f);
  for (std::size_t i = 0; i < 40; ++i) { same[i * 3] = 1.0f; }
  std::vector<Label> labels(40);
  for (std::size_t i = 0; i < 10; ++i) { labels[i] = static_cast<ClassId>(i % 2); }
  CHECK_THROWS_AS(estimate_k(GcdDataset(FeatureMatrix(40, 3, same, true), labels)), DataError);

  const auto& b = blobs();
  CHECK_THROWS_AS(estimate_k(GcdDataset(b.data.features())), DataError);
  EstimateConfig bad;
  bad.ratio = 0.0;
  CHECK_THROWS_AS(estimate_k(b.data, bad), ArgumentError);
  bad = {};
  bad.band_multiplier = 0.5;
  CHECK_THROWS_AS(estimate_k(b.data, bad), ArgumentError);
}

TEST_CASE("assignment from k")
{
  const auto& b = blobs();
  const Hierarchy h = run_snc(b.data);
  for (const auto& level : h.levels) {
    const std::size_t k = level.size();
    if (k < b.data.num_labelled_classes() || k >= b.data.size()) { continue; }
    CHECK(assign_labels(b.data, k) == level.assignment);
    CHECK(assignment_level(h, k) == level.level);
  }
  const auto a = assign_labels(b.data, 10);
  CHECK(std::set<std::size_t>(a.begin(), a.end()).size() == 10);
  CHECK_THROWS_AS(assign_labels(b.data, b.data.num_labelled_classes() - 1), ConstraintError);
  CHECK_THROWS_AS(assign_labels(b.data, b.data.size()), ArgumentError);
}

TEST_SUITE_END();
