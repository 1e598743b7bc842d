// Copyright 2026 The coxkl Authors.
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

#ifndef COXKL_ERROR_HPP_
#define COXKL_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace coxkl {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: bad generator index, unknown label, invalid matrix, ...
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// An operation needed an element longer than the enumerated length bound.
class LengthBoundExceeded : public Error {
 public:
  using Error::Error;
};

// A precondition on the mathematical input failed (element not in W^H,
// matching not H-special, ...).
class PreconditionFailed : public Error {
 public:
  using Error::Error;
};

// An invariant that the theory guarantees did not hold. Always a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace coxkl

#endif  // COXKL_ERROR_HPP_
