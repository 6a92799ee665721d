// Copyright 2026 The primegaps Authors
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

namespace primegaps {

// Argument outside the supported range of an operation (sieve bounds,
// segment sizes, ...).
class BoundsError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// A formula evaluated outside its mathematical domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Primes delivered out of ascending order.
class OrderingError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Snapshot requested at a threshold the stream has already passed.
class SequencingError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InsufficientDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Persistence failures. `UnrecoverableStateError` covers missing or corrupt
// run metadata; `UpgradeRequiredError` a format version this build cannot read.
class StoreError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnrecoverableStateError : public StoreError {
 public:
  using StoreError::StoreError;
};

class UpgradeRequiredError : public StoreError {
 public:
  using StoreError::StoreError;
};

}  // namespace primegaps
