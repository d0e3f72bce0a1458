/*
 * SPDX-FileCopyrightText: Copyright (c) 2026, The snc-toolkit Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <snc/dataset.hpp>
#include <snc/merge.hpp>
#include <snc/snc.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace snc {

struct ReferenceScore {
  double acc_val = 0.0;            ///< accuracy on the held-out labelled instances
  double sil_u   = 0.0;            ///< silhouette on the unlabelled instances
  std::optional<double> s_scaled;  ///< product of min-max scaled terms, set within a scan
};

struct ScanPoint {
  std::size_t count = 0;
  std::size_t level = 0;  ///< hierarchy level (level scan only)
  ReferenceScore score;
};

struct EstimateConfig {
  double ratio                 = 0.8;
  std::uint64_t seed           = 0;
  std::size_t silhouette_cap   = 5000;
  std::optional<double> band_multiplier;  ///< caps N_o at ceil(m * |chosen level|)
};

struct KEstimate {
  std::size_t k            = 0;
  std::size_t chosen_level = 0;
  std::size_t n_o          = 0;
  std::size_t n_e          = 0;
  std::size_t start_level  = 0;
  std::vector<ScanPoint> levels;  ///< level scan
  std::vector<ScanPoint> scan;    ///< merge scan, decreasing count
  double runtime_ms = 0.0;
};

/// Min-max scaling; a constant series maps to all ones.
std::vector<double> min_max_scale(const std::vector<double>& values);

/// Raw accuracy and silhouette terms of a partition. Throws DataError for a single cluster.
ReferenceScore reference_components(const Partition& p, const GcdDataset& ds,
                                    const LabelledSplit& split, const EstimateConfig& cfg);

/// Class-number estimate from one hierarchy plus a one-to-one merge scan.
KEstimate estimate_k(const GcdDataset& ds, const EstimateConfig& cfg = {},
                     const ChainConfig& chain = {});

/// Hierarchy level whose partition is merged down to k: an exact match, else the smallest count above k.
std::size_t assignment_level(const Hierarchy& h, std::size_t k);

/// Cluster id per instance for exactly k clusters.
std::vector<std::size_t> assign_labels(const GcdDataset& ds, std::size_t k,
                                       const ChainConfig& chain = {});

}  // namespace snc
