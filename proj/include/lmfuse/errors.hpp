/* Copyright 2026 The lmfuse Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef LMFUSE_ERRORS_HPP_
#define LMFUSE_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace lmfuse {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Incompatible tensor/matrix shapes.
class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& what) : Error(what) {}
};

// An API precondition was violated (non-scalar loss, mixed tapes, ...).
class ContractError : public Error {
 public:
  explicit ContractError(const std::string& what) : Error(what) {}
};

// Requested multistep scheme does not exist.
class UnsupportedSchemeError : public Error {
 public:
  explicit UnsupportedSchemeError(const std::string& what) : Error(what) {}
};

// A step was asked to consume more history than is available.
class HistoryUnderflowError : public Error {
 public:
  explicit HistoryUnderflowError(const std::string& what) : Error(what) {}
};

// Invalid run configuration (step counts, stage counts, divisibility, ...).
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(what) {}
};

// Malformed or inconsistent user-supplied inputs (stage lists, datasets).
class InputError : public Error {
 public:
  explicit InputError(const std::string& what) : Error(what) {}
};

// Training diverged.
class TrainingFailureError : public Error {
 public:
  explicit TrainingFailureError(const std::string& what) : Error(what) {}
};

// File I/O and format problems.
class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(what) {}
};

}  // namespace lmfuse

#endif  // LMFUSE_ERRORS_HPP_
