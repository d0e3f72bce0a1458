/*
 * SPDX-FileCopyrightText: Copyright (c) 2026, The snc-toolkit Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#include <snc/linalg.hpp>

#include <cmath>
#include <cstddef>

namespace snc {

float dot(std::span<const float> a, std::span<const float> b)
{
  const std::size_t n    = a.size();
  const std::size_t full = n - n % 8;
  float lane[8]          = {0, 0, 0, 0, 0, 0, 0, 0};
  for (std::size_t i = 0; i < full; i += 8) {
    for (std::size_t k = 0; k < 8; ++k) {
      lane[k] += a[i + k] * b[i + k];
    }
  }
  for (std::size_t i = full; i < n; ++i) {
    lane[i - full] += a[i] * b[i];
  }
  return ((lane[0] + lane[1]) + (lane[2] + lane[3])) + ((lane[4] + lane[5]) + (lane[6] + lane[7]));
}

double dot_precise(std::span<const float> a, std::span<const float> b)
{
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    acc += static_cast<double>(a[i]) * static_cast<double>(b[i]);
  }
  return acc;
}

std::vector<float> normalized(std::span<const double> sum)
{
  double norm = 0.0;
  for (double v : sum) {
    norm += v * v;
  }
  norm = std::sqrt(norm);
  std::vector<float> out(sum.size());
  for (std::size_t i = 0; i < sum.size(); ++i) {
    out[i] = static_cast<float>(sum[i] / norm);
  }
  return out;
}

}  // namespace snc
