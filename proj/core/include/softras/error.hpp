// Copyright 2026 The softras Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace softras {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input that violates a documented precondition or type invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A NaN or infinity reached a place where only finite values are allowed.
class NumericError : public Error {
 public:
  using Error::Error;
};

// File-level failures: unreadable paths, malformed files, bad formats.
class IoError : public Error {
 public:
  using Error::Error;
};

// A vertex fell on or behind the near plane.
class ProjectionError : public ValidationError {
 public:
  ProjectionError(std::size_t vertex, const std::string& what)
      : ValidationError(what), vertex_(vertex) {}

  std::size_t vertex() const noexcept { return vertex_; }

 private:
  std::size_t vertex_;
};

}  // namespace softras
