// src/base/error.h

// Copyright 2026  The dksv Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef DKSV_BASE_ERROR_H_
#define DKSV_BASE_ERROR_H_

#include <stdexcept>
#include <string>

namespace dksv {

/// Root of all errors raised by the library. The CLI maps subclasses onto
/// exit codes (see ExitCodeFor in tools/).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Tensor extents do not line up.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Invalid configuration value or inconsistent architecture description.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Caller supplied data that violates an operation's precondition.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Malformed file content; the message carries the byte offset or line.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Non-finite values or broken numeric invariants.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Wrong usage of an API (e.g. backward on a non-scalar).
class UsageError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace dksv

#endif  // DKSV_BASE_ERROR_H_
