// Copyright 2026 The ramcube Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace ramcube {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent user configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A complex or local system could not be built (bad modulus, generator
// count mismatch, axiom failure, central condition).
class ConstructionError : public Error {
 public:
  using Error::Error;
};

// A modulus that divides one of the primes or is not an odd prime.
class InvalidModulus : public ConstructionError {
 public:
  using ConstructionError::ConstructionError;
};

// An operation was called on inputs that violate its documented
// precondition (missing parities, non-Hermitian matrix, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Numerical routine failed (no convergence, dimension cap exceeded).
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace ramcube
