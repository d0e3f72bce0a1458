/*
 * SPDX-FileCopyrightText: Copyright (c) 2026, The snc-toolkit Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#include <snc/error.hpp>
#include <snc/synthetic.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace snc {

Blobs make_blobs(const BlobsConfig& cfg)
{
  if (cfg.classes == 0 || cfg.dim == 0) { throw ArgumentError("blobs need classes and dim >= 1"); }
  if (cfg.seen > cfg.classes) { throw ArgumentError("more seen classes than classes"); }
  if (cfg.sigma < 0.0) { throw ArgumentError("sigma must be non-negative"); }

  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const std::size_t d = cfg.dim;

  std::vector<double> centers(cfg.classes * d);
  for (std::size_t c = 0; c < cfg.classes; ++c) {
    for (int attempt = 0;; ++attempt) {
      double norm = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        centers[c * d + j] = normal(rng);
        norm += centers[c * d + j] * centers[c * d + j];
      }
      norm = std::sqrt(norm);
      for (std::size_t j = 0; j < d; ++j) { centers[c * d + j] /= norm; }
      bool ok = true;
      for (std::size_t o = 0; o < c && ok; ++o) {
        double sq = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
          const double diff = centers[c * d + j] - centers[o * d + j];
          sq += diff * diff;
        }
        ok = std::sqrt(sq) >= cfg.min_center_distance;
      }
      if (ok) { break; }
      if (attempt > 10000) { throw ArgumentError("cannot place centers that far apart"); }
    }
  }

  struct Row {
    ClassId truth;
    bool labelled;
  };
  std::vector<Row> rows;
  for (std::size_t c = 0; c < cfg.classes; ++c) {
    const bool seen_class = c < cfg.seen;
    for (std::size_t k = 0; seen_class && k < cfg.labelled_per_seen; ++k) {
      rows.push_back({static_cast<ClassId>(c), true});
    }
    for (std::size_t k = 0; k < cfg.unlabelled_per_class; ++k) {
      rows.push_back({static_cast<ClassId>(c), false});
    }
  }
  if (rows.empty()) { throw ArgumentError("blobs config produces no instances"); }
  std::shuffle(rows.begin(), rows.end(), rng);

  std::vector<float> values(rows.size() * d);
  Blobs out;
  std::vector<Label> labels(rows.size());
  out.truth.resize(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::size_t c = static_cast<std::size_t>(rows[i].truth);
    std::vector<double> point(d);
    double norm = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      point[j] = centers[c * d + j] + cfg.sigma * normal(rng);
      norm += point[j] * point[j];
    }
    norm = std::sqrt(norm);
    for (std::size_t j = 0; j < d; ++j) { values[i * d + j] = static_cast<float>(point[j] / norm); }
    out.truth[i] = rows[i].truth;
    if (rows[i].labelled) { labels[i] = rows[i].truth; }
  }
  for (std::size_t c = 0; c < cfg.seen; ++c) {
    if (cfg.labelled_per_seen > 0) { out.seen.insert(static_cast<ClassId>(c)); }
  }
  out.data = GcdDataset(FeatureMatrix(rows.size(), d, std::move(values), true), std::move(labels));
  return out;
}

}  // namespace snc
