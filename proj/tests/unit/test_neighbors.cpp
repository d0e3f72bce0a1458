/*
 * SPDX-FileCopyrightText: Copyright (c) 2026, The snc-toolkit Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#include <snc/linalg.hpp>
#include <snc/neighbors.hpp>
#include <snc/parallel.hpp>

#include <doctest.h>
#include <oracles.hpp>

#include <cstring>
#include <numeric>

#include "../../core/src/kernel.hpp"

using namespace snc;

TEST_SUITE_BEGIN("neighbors");

TEST_CASE("dot is symmetric bit for bit")
{
  std::mt19937_64 rng(3);
  for (std::size_t d : {1, 7, 8, 13, 64, 129}) {
    const auto m = oracle::random_unit_rows(6, d, rng);
    for (std::size_t i = 0; i < 6; ++i) {
      for (std::size_t j = 0; j < 6; ++j) {
        const float ab = dot(m.row(i), m.row(j));
        const float ba = dot(m.row(j), m.row(i));
        CHECK(std::memcmp(&ab, &ba, sizeof ab) == 0);
        CHECK(ab == doctest::Approx(dot_precise(m.row(i), m.row(j))).epsilon(1e-5));
      }
    }
  }
}

TEST_CASE("tiled kernel reproduces dot exactly")
{
  std::mt19937_64 rng(4);
  for (std::size_t d : {1, 5, 8, 17, 128}) {
    const std::size_t na = 11, nb = 9;
    const auto a = oracle::random_unit_rows(na, d, rng);
    const auto b = oracle::random_unit_rows(nb, d, rng);
    const detail::PackedRows pa(a.values(), na, d), pb(b.values(), nb, d);
    std::vector<const float*> ra(na), rb(nb);
    for (std::size_t i = 0; i < na; ++i) { ra[i] = pa.row(i); }
    for (std::size_t j = 0; j < nb; ++j) { rb[j] = pb.row(j); }
    std::vector<float> out(na * nb);
    detail::dot_block(ra.data(), na, rb.data(), nb, pa.stride(), out.data());
    for (std::size_t i = 0; i < na; ++i) {
      for (std::size_t j = 0; j < nb; ++j) {
        const float want = dot(a.row(i), b.row(j));
        CHECK(std::memcmp(&out[i * nb + j], &want, sizeof want) == 0);
      }
    }
  }
}

TEST_CASE("first neighbors agree with the brute-force scan")
{
  std::mt19937_64 rng(8);
  struct Shape {
    std::size_t n, d;
  };
  for (const Shape s : {Shape{2, 3}, Shape{40, 2}, Shape{300, 16}, Shape{2500, 4}, Shape{2100, 40}}) {
    const auto m = oracle::random_unit_rows(s.n, s.d, rng);
    const PointSet pts{m.values(), s.n, s.d};
    std::vector<std::size_t> all(s.n);
    std::iota(all.begin(), all.end(), std::size_t{0});
    CHECK(first_neighbors(pts, all) == first_neighbors_brute(pts, all));

    std::vector<std::size_t> some;
    for (std::size_t i = 0; i < s.n; i += 3) { some.push_back(i); }
    CHECK(first_neighbors(pts, some) == first_neighbors_brute(pts, some));
  }
}

TEST_CASE("ties go to the lowest index")
{
  const std::vector<float> v{1, 0, 0, 1, 0, 1, 0, 1};
  const PointSet pts{v, 4, 2};
  const std::vector<std::size_t> q{0, 1, 3};
  CHECK(first_neighbors(pts, q) == std::vector<std::size_t>{1, 2, 1});
}

TEST_CASE("results do not depend on the thread count")
{
  std::mt19937_64 rng(9);
  const auto m = oracle::random_unit_rows(3000, 24, rng);
  const PointSet pts{m.values(), 3000, 24};
  std::vector<std::size_t> all(3000);
  std::iota(all.begin(), all.end(), std::size_t{0});
  set_thread_count(1);
  const auto one = first_neighbors(pts, all);
  set_thread_count(8);
  const auto eight = first_neighbors(pts, all);
  set_thread_count(0);
  CHECK(one == eight);
}

TEST_SUITE_END();
