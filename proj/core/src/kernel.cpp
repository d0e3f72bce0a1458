/*
 * SPDX-FileCopyrightText: Copyright (c) 2026, The snc-toolkit Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#include "kernel.hpp"

#include <algorithm>
#include <cstring>

#if defined(__GNUC__) && !defined(__clang__)
#pragma GCC diagnostic ignored "-Wpsabi"
#endif

#if defined(__GNUC__) && defined(__x86_64__) && !defined(__clang__)
#define SNC_KERNEL_CLONES __attribute__((target_clones("avx2", "default")))
#else
#define SNC_KERNEL_CLONES
#endif

namespace snc::detail {

PackedRows::PackedRows(std::span<const float> values, std::size_t rows, std::size_t cols)
  : rows_(rows), stride_((cols + 7) / 8 * 8), values_(rows * stride_, 0.0f)
{
  for (std::size_t i = 0; i < rows; ++i) {
    std::copy_n(values.data() + i * cols, cols, values_.data() + i * stride_);
  }
}

namespace {

using v8 = float __attribute__((vector_size(32)));

inline v8 load(const float* p)
{
  v8 v;
  std::memcpy(&v, p, sizeof v);
  return v;
}

inline float reduce(v8 l)
{
  return ((l[0] + l[1]) + (l[2] + l[3])) + ((l[4] + l[5]) + (l[6] + l[7]));
}

}  // namespace

SNC_KERNEL_CLONES
void dot_block(const float* const* a, std::size_t na, const float* const* b, std::size_t nb,
               std::size_t stride, float* out)
{
  std::size_t i = 0;
  for (; i + 4 <= na; i += 4) {
    std::size_t j = 0;
    for (; j + 2 <= nb; j += 2) {
      v8 c00 = {}, c01 = {}, c10 = {}, c11 = {}, c20 = {}, c21 = {}, c30 = {}, c31 = {};
      const float *a0 = a[i], *a1 = a[i + 1], *a2 = a[i + 2], *a3 = a[i + 3];
      const float *p0 = b[j], *p1 = b[j + 1];
      for (std::size_t k = 0; k < stride; k += 8) {
        const v8 b0 = load(p0 + k);
        const v8 b1 = load(p1 + k);
        v8 av       = load(a0 + k);
        c00 += av * b0;
        c01 += av * b1;
        av = load(a1 + k);
        c10 += av * b0;
        c11 += av * b1;
        av = load(a2 + k);
        c20 += av * b0;
        c21 += av * b1;
        av = load(a3 + k);
        c30 += av * b0;
        c31 += av * b1;
      }
      float* o = out + i * nb + j;
      o[0]          = reduce(c00);
      o[1]          = reduce(c01);
      o[nb]         = reduce(c10);
      o[nb + 1]     = reduce(c11);
      o[2 * nb]     = reduce(c20);
      o[2 * nb + 1] = reduce(c21);
      o[3 * nb]     = reduce(c30);
      o[3 * nb + 1] = reduce(c31);
    }
    for (; j < nb; ++j) {
      v8 acc[4] = {};
      for (std::size_t k = 0; k < stride; k += 8) {
        const v8 bv = load(b[j] + k);
        for (std::size_t r = 0; r < 4; ++r) { acc[r] += load(a[i + r] + k) * bv; }
      }
      for (std::size_t r = 0; r < 4; ++r) { out[(i + r) * nb + j] = reduce(acc[r]); }
    }
  }
  for (; i < na; ++i) {
    for (std::size_t j = 0; j < nb; ++j) {
      v8 acc = {};
      for (std::size_t k = 0; k < stride; k += 8) { acc += load(a[i] + k) * load(b[j] + k); }
      out[i * nb + j] = reduce(acc);
    }
  }
}

}  // namespace snc::detail
