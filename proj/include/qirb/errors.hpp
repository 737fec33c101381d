// Copyright 2026 The QIRB Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace qirb {

/// Thrown when an operation's preconditions are violated by its caller.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a serialized file does not match the expected schema or version.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when a fit cannot be carried out on the supplied data.
class FitDegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qirb
