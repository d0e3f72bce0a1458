/*
 * SPDX-FileCopyrightText: Copyright (c) 2026, The snc-toolkit Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <snc/dataset.hpp>
#include <snc/snc.hpp>

#include <cstddef>
#include <cstdint>
#include <vector>

namespace snc {

/// Unsupervised first-neighbor hierarchy; stops at one cluster or when a step makes no progress.
Hierarchy finch(const FeatureMatrix& features);

struct KMeansConfig {
  std::size_t k       = 2;
  std::uint64_t seed  = 0;
  std::size_t max_iter = 300;
  std::size_t n_init  = 1;  ///< independent seedings; the lowest final inertia wins
};

struct KMeansResult {
  std::vector<std::size_t> assignment;
  std::vector<float> centroids;        ///< k x d, row-major
  std::vector<double> inertia_trace;   ///< inertia after every assignment step
  double inertia         = 0.0;
  std::size_t iterations = 0;
  bool converged         = false;
};

/// Lloyd's algorithm with k-means++ seeding.
KMeansResult kmeans(const FeatureMatrix& features, const KMeansConfig& cfg);

/**
 * Semi-supervised k-means: the first N_L centroids start at the labelled
 * class means and keep their labelled members pinned; the remaining k - N_L
 * are k-means++ seeded from unlabelled data.
 */
KMeansResult semi_kmeans(const GcdDataset& ds, const KMeansConfig& cfg);

}  // namespace snc
