/*
 * SPDX-FileCopyrightText: Copyright (c) 2026, The snc-toolkit Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#include <snc/parallel.hpp>

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>
#include <vector>

namespace snc {

namespace {
std::atomic<unsigned> g_threads{1};
}

void set_thread_count(unsigned count)
{
  if (count == 0) { count = std::max(1u, std::thread::hardware_concurrency()); }
  g_threads.store(count);
}

unsigned thread_count() { return g_threads.load(); }

namespace detail {

void run_chunks(std::size_t n, std::size_t min_chunk,
                const std::function<void(std::size_t, std::size_t)>& body)
{
  if (n == 0) { return; }
  min_chunk = std::max<std::size_t>(min_chunk, 1);
  const std::size_t max_workers = (n + min_chunk - 1) / min_chunk;
  const std::size_t workers     = std::min<std::size_t>(thread_count(), max_workers);
  if (workers <= 1) {
    body(0, n);
    return;
  }

  std::exception_ptr failure;
  std::mutex failure_mutex;
  const std::size_t chunk = (n + workers - 1) / workers;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end   = std::min(n, begin + chunk);
      if (begin >= end) { break; }
      pool.emplace_back([&, begin, end] {
        try {
          body(begin, end);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) { failure = std::current_exception(); }
        }
      });
    }
  }
  if (failure) { std::rethrow_exception(failure); }
}

}  // namespace detail
}  // namespace snc
