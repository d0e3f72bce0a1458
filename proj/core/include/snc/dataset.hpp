/*
 * SPDX-FileCopyrightText: Copyright (c) 2026, The snc-toolkit Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace snc {

using ClassId = std::int32_t;
/// Per-instance class label; std::nullopt marks an unlabelled instance.
using Label = std::optional<ClassId>;

enum class FeatureFormat { binary, csv };

/**
 * Dense row-major matrix of instance embeddings.
 *
 * Storage is shared and immutable, so copies are cheap and safe to read from
 * several threads.
 */
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  /// Validates shape and finiteness; throws DataError on violation.
  FeatureMatrix(std::size_t rows, std::size_t cols, std::vector<float> values,
                bool normalized = false);

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  [[nodiscard]] bool normalized() const noexcept { return normalized_; }
  [[nodiscard]] bool empty() const noexcept { return rows_ == 0; }

  [[nodiscard]] std::span<const float> row(std::size_t i) const
  {
    return {values_->data() + i * cols_, cols_};
  }
  [[nodiscard]] std::span<const float> values() const { return *values_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  bool normalized_  = false;
  std::shared_ptr<const std::vector<float>> values_ = std::make_shared<std::vector<float>>();
};

FeatureMatrix load_features(const std::filesystem::path& path, FeatureFormat format);
void write_features(const std::filesystem::path& path, const FeatureMatrix& m,
                    FeatureFormat format);

/// Guesses the format from the file extension (".csv" is CSV, anything else binary).
FeatureFormat format_from_extension(const std::filesystem::path& path);

/// Scales every row to unit Euclidean norm. Throws DataError naming the first zero row.
FeatureMatrix l2_normalize(const FeatureMatrix& m);

/// Throws DataError unless every row norm is within `tolerance` of 1.
void require_unit_rows(const FeatureMatrix& m, double tolerance = 1e-4);

/// Result of reading an `index,label` file.
struct LabelFile {
  std::vector<Label> labels;            ///< contiguous ids, first-seen order
  std::vector<std::int64_t> original;   ///< contiguous id -> id as written in the file
};

LabelFile load_labels(const std::filesystem::path& path, std::size_t n);
/// Writes `index,label` rows for labelled entries only.
void write_labels(const std::filesystem::path& path, std::span<const Label> labels);

/**
 * Features plus partial labels. Labelled class ids must be contiguous
 * 0..N_L-1 with every id used at least once.
 */
class GcdDataset {
 public:
  GcdDataset() = default;
  GcdDataset(FeatureMatrix features, std::vector<Label> labels);
  /// All instances unlabelled.
  explicit GcdDataset(FeatureMatrix features);

  [[nodiscard]] const FeatureMatrix& features() const noexcept { return features_; }
  [[nodiscard]] std::span<const Label> labels() const noexcept { return labels_; }
  [[nodiscard]] const Label& label(std::size_t i) const { return labels_[i]; }
  [[nodiscard]] bool is_labelled(std::size_t i) const { return labels_[i].has_value(); }
  [[nodiscard]] std::size_t size() const noexcept { return features_.rows(); }

  [[nodiscard]] std::span<const std::size_t> labelled_indices() const noexcept { return labelled_; }
  [[nodiscard]] std::span<const std::size_t> unlabelled_indices() const noexcept
  {
    return unlabelled_;
  }
  [[nodiscard]] std::size_t num_labelled_classes() const noexcept { return num_classes_; }

  /// Same features with labels kept only for `keep` (every other instance becomes unlabelled).
  /// Surviving class ids are compacted in ascending order.
  [[nodiscard]] GcdDataset restricted_to(std::span<const std::size_t> keep) const;

 private:
  FeatureMatrix features_;
  std::vector<Label> labels_;
  std::vector<std::size_t> labelled_;
  std::vector<std::size_t> unlabelled_;
  std::size_t num_classes_ = 0;
};

/// Held-out split of the labelled instances.
struct LabelledSplit {
  std::vector<std::size_t> train;  ///< sorted instance ids
  std::vector<std::size_t> val;    ///< sorted instance ids
  double ratio       = 0.8;
  std::uint64_t seed = 0;
};

/**
 * Per-class stratified split: a class with k labelled instances sends
 * ceil(ratio * k) of them (at least one) to `train`.
 */
LabelledSplit split_labelled(const GcdDataset& ds, double ratio, std::uint64_t seed);

}  // namespace snc
