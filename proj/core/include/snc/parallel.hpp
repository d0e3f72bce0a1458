/*
 * SPDX-FileCopyrightText: Copyright (c) 2026, The snc-toolkit Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cstddef>
#include <exception>
#include <functional>

namespace snc {

/// Sets the number of worker threads used by parallel loops (0 = hardware concurrency).
void set_thread_count(unsigned count);
unsigned thread_count();

namespace detail {
void run_chunks(std::size_t n, std::size_t min_chunk,
                const std::function<void(std::size_t, std::size_t)>& body);
}

/**
 * Calls `fn(i)` for every i in [0, n). Iterations must be independent: each
 * one may only write state owned by index i, which keeps results identical
 * for every thread count.
 */
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn, std::size_t min_chunk = 64)
{
  detail::run_chunks(n, min_chunk, [&fn](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      fn(i);
    }
  });
}

}  // namespace snc
