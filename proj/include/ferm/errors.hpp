// Copyright 2026 The Fermionant Authors.
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

#ifndef FERM_ERRORS_HPP_
#define FERM_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace ferm {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed rational, matrix, graph, diagram or certificate text.
class FormatError : public Error {
 public:
  using Error::Error;
};

// A brute-force enumeration would exceed the configured cap.
class EnumerationTooLarge : public Error {
 public:
  using Error::Error;
};

// Interpolation nodes coincide or vanish (k in {0, 1, -1}).
class DegenerateNodes : public Error {
 public:
  using Error::Error;
};

// A gadget search ran out of candidates; carries the best partial result.
class CertificationFailure : public Error {
 public:
  using Error::Error;
};

// A coefficient system that should be triangular turned out singular.
class SingularSystem : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace ferm

#endif  // FERM_ERRORS_HPP_
