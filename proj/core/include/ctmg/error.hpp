//
// Copyright (c) 2026 The ctmg authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CTMG_ERROR_HPP
#define CTMG_ERROR_HPP

#include <stdexcept>

namespace ctmg {

/// Base class of every exception thrown by this library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Violated shape contract between tensors or operators.
class dimension_error : public error {
 public:
  using error::error;
};

/// Invalid configuration value (non-positive sigma, bad tolerance, ...).
class parameter_error : public error {
 public:
  using error::error;
};

/// Numerical failure (singular coarse system, residual check failed, ...).
class numeric_error : public error {
 public:
  using error::error;
};

/// File format or filesystem failure.
class io_error : public error {
 public:
  using error::error;
};

}  // namespace ctmg

#endif  // CTMG_ERROR_HPP
