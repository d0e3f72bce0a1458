/*
 * SPDX-FileCopyrightText: Copyright (c) 2026, The snc-toolkit Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <span>
#include <vector>

namespace snc {

/**
 * Similarity kernel shared by every neighbor and merge search.
 *
 * Accumulates in eight fixed float lanes that are combined in a fixed order,
 * so dot(a, b) == dot(b, a) bit-for-bit and the value never depends on which
 * code path (or thread) asked for it.
 */
float dot(std::span<const float> a, std::span<const float> b);

/// Double-precision dot product, used where accuracy matters more than speed.
double dot_precise(std::span<const float> a, std::span<const float> b);

/// Normalizes a double accumulator into a unit float vector. Requires a nonzero input.
std::vector<float> normalized(std::span<const double> sum);

}  // namespace snc
