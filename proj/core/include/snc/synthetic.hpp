/*
 * SPDX-FileCopyrightText: Copyright (c) 2026, The snc-toolkit Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <snc/dataset.hpp>

#include <cstddef>
#include <cstdint>
#include <set>
#include <vector>

namespace snc {

/// Isotropic Gaussian classes around random unit centers, then l2-normalized.
struct BlobsConfig {
  std::size_t classes             = 10;
  std::size_t seen                = 5;    ///< classes 0..seen-1 receive labelled instances
  std::size_t labelled_per_seen   = 50;
  std::size_t unlabelled_per_class = 100;
  std::size_t dim                 = 16;
  double sigma                    = 0.05;  ///< per-coordinate std before normalization
  double min_center_distance      = 0.5;   ///< rejection threshold between centers
  std::uint64_t seed              = 0;
};

struct Blobs {
  GcdDataset data;             ///< observed labels only
  std::vector<ClassId> truth;  ///< ground-truth class per instance
  std::set<ClassId> seen;
};

/// Instances are shuffled; observed label ids equal truth ids for seen classes.
Blobs make_blobs(const BlobsConfig& cfg);

}  // namespace snc
