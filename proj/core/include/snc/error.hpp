/*
 * SPDX-FileCopyrightText: Copyright (c) 2026, The snc-toolkit Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <stdexcept>
#include <string>

namespace snc {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input files or data that violates a type invariant.
class DataError : public Error {
 public:
  using Error::Error;
};

/// A request that the labelled-class constraints make unreachable.
class ConstraintError : public Error {
 public:
  using Error::Error;
};

/// A parameter outside its documented domain.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

}  // namespace snc
