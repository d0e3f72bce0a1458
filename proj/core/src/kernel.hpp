/*
 * SPDX-FileCopyrightText: Copyright (c) 2026, The snc-toolkit Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace snc::detail {

/// Rows copied into a zero-padded buffer whose stride is a multiple of 8.
class PackedRows {
 public:
  PackedRows(std::span<const float> values, std::size_t rows, std::size_t cols);

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t stride() const noexcept { return stride_; }
  [[nodiscard]] const float* row(std::size_t i) const noexcept { return values_.data() + i * stride_; }

 private:
  std::size_t rows_   = 0;
  std::size_t stride_ = 0;
  std::vector<float> values_;
};

inline constexpr std::size_t kTileRows = 32;
inline constexpr std::size_t kTileCols = 128;

/// out[r * nb + c] = dot(a[r], b[c]) for padded rows of length `stride`.
/// Bit-identical to snc::dot on the unpadded rows.
void dot_block(const float* const* a, std::size_t na, const float* const* b, std::size_t nb,
               std::size_t stride, float* out);

}  // namespace snc::detail
