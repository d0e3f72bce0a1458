/*
 * SPDX-FileCopyrightText: Copyright (c) 2026, The snc-toolkit Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <snc/dataset.hpp>

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <vector>

namespace snc {

/// Square cost matrix, row-major.
struct CostMatrix {
  std::size_t n = 0;
  std::vector<double> values;

  [[nodiscard]] double at(std::size_t r, std::size_t c) const { return values[r * n + c]; }
};

struct LinearAssignment {
  std::vector<std::size_t> row_to_col;
  double cost = 0.0;
};

/**
 * Minimum-cost perfect assignment. Among optimal permutations the
 * lexicographically smallest row_to_col is returned.
 */
LinearAssignment hungarian(const CostMatrix& cost);

/// Same optimum without the lexicographic refinement.
LinearAssignment hungarian_any(const CostMatrix& cost);

struct AccReport {
  double acc_all = 0.0;
  std::optional<double> acc_seen;    ///< absent when no evaluated instance is from a seen class
  std::optional<double> acc_unseen;  ///< absent when every evaluated instance is from a seen class
  std::map<std::size_t, ClassId> mapping;  ///< predicted cluster -> matched class
  std::size_t evaluated = 0;
};

/**
 * Hungarian-matched clustering accuracy over `eval_set`. One global mapping
 * is used for All, Seen and Unseen.
 */
AccReport clustering_accuracy(std::span<const std::size_t> pred, std::span<const ClassId> truth,
                              std::span<const std::size_t> eval_set,
                              const std::set<ClassId>& seen_classes);

/// Matched fraction only (no lexicographic refinement); used inside scans.
double matched_fraction(std::span<const std::size_t> pred, std::span<const ClassId> truth,
                        std::span<const std::size_t> eval_set);

/// Instance-weighted share of each cluster's majority class.
double purity(std::span<const std::size_t> pred, std::span<const ClassId> truth);

struct SilhouetteSample {
  std::size_t cap    = 5000;
  std::uint64_t seed = 0;
};

/**
 * Mean silhouette with cosine distance (1 - dot) over the instances listed
 * in `population` (all instances when empty). Singleton-cluster members
 * score 0. With a sample, a seeded uniform subset of the population is
 * scored against the whole population.
 */
double silhouette(const FeatureMatrix& features, std::span<const std::size_t> assignment,
                  std::span<const std::size_t> population = {},
                  std::optional<SilhouetteSample> sample  = std::nullopt);

}  // namespace snc
