/*
 * SPDX-FileCopyrightText: Copyright (c) 2026, The snc-toolkit Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#include <snc/error.hpp>
#include <snc/estimate.hpp>
#include <snc/metrics.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

namespace snc {

namespace {

std::vector<ClassId> truth_vector(const GcdDataset& ds)
{
  std::vector<ClassId> truth(ds.size(), -1);
  for (std::size_t i : ds.labelled_indices()) { truth[i] = *ds.label(i); }
  return truth;
}

struct Scorer {
  const GcdDataset& ds;
  const LabelledSplit& split;
  const EstimateConfig& cfg;
  std::vector<ClassId> truth = truth_vector(ds);

  ReferenceScore operator()(const Partition& p) const
  {
    if (p.size() < 2) { throw DataError("reference score needs at least two clusters"); }
    ReferenceScore s;
    s.acc_val = split.val.empty() ? 0.0 : matched_fraction(p.assignment, truth, split.val);
    s.sil_u   = silhouette(ds.features(), p.assignment, ds.unlabelled_indices(),
                           SilhouetteSample{cfg.silhouette_cap, cfg.seed});
    return s;
  }
};

// Index of the maximum scaled product; ties go to the point with fewer clusters.
std::size_t apply_scaling(std::vector<ScanPoint>& points)
{
  std::vector<double> acc, sil;
  for (const auto& p : points) {
    acc.push_back(p.score.acc_val);
    sil.push_back(p.score.sil_u);
  }
  const auto acc_s = min_max_scale(acc);
  const auto sil_s = min_max_scale(sil);
  std::size_t best = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    points[i].score.s_scaled = acc_s[i] * sil_s[i];
    const double cur = *points[i].score.s_scaled, top = *points[best].score.s_scaled;
    if (cur > top || (cur == top && points[i].count < points[best].count)) { best = i; }
  }
  return best;
}

}  // namespace

std::vector<double> min_max_scale(const std::vector<double>& values)
{
  if (values.empty()) { return {}; }
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  std::vector<double> out(values.size(), 1.0);
  if (*hi > *lo) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      out[i] = (values[i] - *lo) / (*hi - *lo);
    }
  }
  return out;
}

ReferenceScore reference_components(const Partition& p, const GcdDataset& ds,
                                    const LabelledSplit& split, const EstimateConfig& cfg)
{
  return Scorer{ds, split, cfg}(p);
}

KEstimate estimate_k(const GcdDataset& ds, const EstimateConfig& cfg, const ChainConfig& chain)
{
  const auto started = std::chrono::steady_clock::now();
  if (ds.labelled_indices().empty()) { throw DataError("estimation needs labelled instances"); }
  if (ds.unlabelled_indices().empty()) { throw DataError("estimation needs unlabelled instances"); }
  if (cfg.band_multiplier && !(*cfg.band_multiplier >= 1.0)) {
    throw ArgumentError("band multiplier must be >= 1");
  }
  if (cfg.silhouette_cap < 2) { throw ArgumentError("silhouette cap must be >= 2"); }

  const LabelledSplit split = split_labelled(ds, cfg.ratio, cfg.seed);
  const GcdDataset visible  = ds.restricted_to(split.train);
  const Hierarchy h         = run_snc(visible, chain);
  const Scorer score{ds, split, cfg};

  KEstimate est;
  for (const auto& level : h.levels) {
    if (level.size() < 2) { continue; }
    try {
      est.levels.push_back({level.size(), level.level, score(level)});
    } catch (const DataError&) {
      // unlabelled instances all in one cluster: no silhouette at this level
    }
  }
  if (est.levels.size() < 2) {
    throw DataError("degenerate hierarchy: fewer than two scorable levels");
  }
  est.chosen_level = est.levels[apply_scaling(est.levels)].level;

  const std::size_t n = ds.size();
  est.n_o = h.levels[est.chosen_level == 0 ? 0 : est.chosen_level - 1].size();
  if (cfg.band_multiplier) {
    const auto cap = static_cast<std::size_t>(
      std::ceil(*cfg.band_multiplier * static_cast<double>(h.levels[est.chosen_level].size())));
    est.n_o = std::min(est.n_o, std::max(cap, h.levels[est.chosen_level].size()));
  }
  est.n_e = est.chosen_level < h.top() ? h.levels[est.chosen_level + 1].size()
                                       : visible.num_labelled_classes();
  est.n_e = std::max<std::size_t>({est.n_e, label_floor(h.levels[est.chosen_level]), 2});
  est.n_e = std::min(est.n_e, est.n_o);

  est.start_level = est.n_o >= n ? 0 : find_start_level(h, est.n_o);
  const Partition& start = h.levels[est.start_level];
  const std::size_t target = std::max(est.n_e, label_floor(start));

  if (start.size() <= est.n_o && start.size() >= target) {
    est.scan.push_back({start.size(), start.level, score(start)});
  }
  one_to_one_merge(start, visible, std::min(target, start.size()),
                   [&](const Partition& p, const MergeStep&) {
                     if (p.size() <= est.n_o) { est.scan.push_back({p.size(), start.level, score(p)}); }
                   });
  if (est.scan.empty()) { throw DataError("merge scan produced no scorable partition"); }
  est.k = est.scan[apply_scaling(est.scan)].count;

  est.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                             started).count();
  return est;
}

std::size_t assignment_level(const Hierarchy& h, std::size_t k)
{
  std::size_t chosen = 0;
  for (std::size_t t = 0; t < h.levels.size(); ++t) {
    const std::size_t count = h.levels[t].size();
    if (count == k) { return t; }
    if (count > k) { chosen = t; }
  }
  return chosen;
}

std::vector<std::size_t> assign_labels(const GcdDataset& ds, std::size_t k, const ChainConfig& chain)
{
  if (k < ds.num_labelled_classes()) {
    throw ConstraintError("k = " + std::to_string(k) + " is below the labelled class count " +
                          std::to_string(ds.num_labelled_classes()));
  }
  if (k == 0 || k >= ds.size()) {
    throw ArgumentError("k must lie in [1, n), got " + std::to_string(k));
  }
  const Hierarchy h     = run_snc(ds, chain);
  const std::size_t lvl = assignment_level(h, k);
  if (h.levels[lvl].size() == k) { return h.levels[lvl].assignment; }
  return one_to_one_merge(h.levels[lvl], ds, k).partition.assignment;
}

}  // namespace snc
