// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The emgclean Authors

#pragma once

#include <stdexcept>
#include <string>

namespace emgclean {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A wavelet decomposition was requested deeper than the signal supports.
class DecompositionDepthError : public Error {
 public:
  using Error::Error;
};

/// A subband set does not have a valid tree shape.
class StructureError : public Error {
 public:
  using Error::Error;
};

/// A statistic is undefined for the given input (zero variance and similar).
class DegenerateError : public Error {
 public:
  using Error::Error;
};

class TrainingError : public Error {
 public:
  using Error::Error;
};

/// Malformed file contents or failed filesystem operation.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace emgclean
