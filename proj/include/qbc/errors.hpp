// Copyright 2026 The qbclab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace qbc {

/// Base class for everything thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numerical or structural precondition failed (non-Hermitian input,
/// non-normalized state, probabilities that do not sum to one, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Operands have incompatible dimensions.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A subsystem label is unknown, duplicated or otherwise malformed.
class LabelError : public Error {
 public:
  using Error::Error;
};

/// A composite dimension would exceed the global dense-simulation cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// A configuration value (optimizer budget, CLI flag, ...) is unusable.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// An analysis was requested on a protocol that does not support it,
/// e.g. a weight-variation scan on a protocol without a weight knob.
class UnsupportedScanError : public Error {
 public:
  using Error::Error;
};

}  // namespace qbc
