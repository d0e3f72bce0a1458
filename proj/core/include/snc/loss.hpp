/*
 * SPDX-FileCopyrightText: Copyright (c) 2026, The snc-toolkit Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <snc/dataset.hpp>
#include <snc/snc.hpp>

#include <cstddef>
#include <vector>

namespace snc {

/// A mini-batch of unit embeddings with true labels (labelled members) and pseudo cluster ids.
class Batch {
 public:
  /// Throws DataError unless sizes agree, |B| >= 2 and embeddings are unit-norm.
  Batch(std::vector<std::size_t> indices, FeatureMatrix embeddings, std::vector<Label> labels,
        std::vector<std::size_t> pseudo);

  [[nodiscard]] std::size_t size() const noexcept { return indices_.size(); }
  [[nodiscard]] std::span<const std::size_t> indices() const noexcept { return indices_; }
  [[nodiscard]] const FeatureMatrix& embeddings() const noexcept { return embeddings_; }
  [[nodiscard]] std::span<const Label> labels() const noexcept { return labels_; }
  [[nodiscard]] std::span<const std::size_t> pseudo() const noexcept { return pseudo_; }
  [[nodiscard]] bool is_labelled(std::size_t member) const { return labels_[member].has_value(); }

 private:
  std::vector<std::size_t> indices_;
  FeatureMatrix embeddings_;
  std::vector<Label> labels_;
  std::vector<std::size_t> pseudo_;
};

/// Positive sets as batch positions, one list per member.
using MemberSets = std::vector<std::vector<std::size_t>>;

struct PositiveSets {
  MemberSets truth;    ///< same-label labelled peers (empty for unlabelled members)
  MemberSets pseudo;   ///< same-pseudo-cluster peers
  MemberSets unified;  ///< truth + unlabelled pseudo peers for labelled members, pseudo otherwise
};

PositiveSets build_positive_sets(const Batch& b);

enum class Scope { labelled_only, all };

struct LossConfig {
  double tau_s = 0.07;
  double tau_a = 0.1;
  double tau_u = 0.1;
};

struct LossValue {
  double sum  = 0.0;  ///< sum of per-member terms
  double mean = 0.0;  ///< sum / scored, 0 when nothing was scored
  std::size_t scored  = 0;
  std::size_t skipped = 0;  ///< in-scope members with an empty positive set
};

/**
 * Supervised contrastive loss: for each in-scope member i with positives,
 * -1/|pos(i)| * sum_q log(exp(z_i.z_q/tau) / sum_{n != i in scope} exp(z_i.z_n/tau)).
 * Members with empty positive sets are skipped unless `skip_empty` is false,
 * in which case they raise ArgumentError.
 */
LossValue sup_con_loss(const Batch& b, const MemberSets& positives, Scope scope, double tau,
                       bool skip_empty = true);

struct TotalLoss {
  LossValue all_data;   ///< pseudo-relation term over B
  LossValue labelled;   ///< true-relation term over B_L
  double total = 0.0;   ///< all_data.sum + labelled.sum
};

TotalLoss total_loss(const Batch& b, const PositiveSets& sets, const LossConfig& cfg = {});

/// Single-term loss over the unified positive sets with tau_u.
LossValue unified_loss(const Batch& b, const PositiveSets& sets, const LossConfig& cfg = {});

/// Runs the hierarchy and returns the pseudo assignment at `level`.
std::vector<std::size_t> refresh_pseudo(const GcdDataset& ds, const ChainConfig& chain,
                                        std::size_t level = 3);

}  // namespace snc
