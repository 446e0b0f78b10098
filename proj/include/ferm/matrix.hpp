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

#ifndef FERM_MATRIX_HPP_
#define FERM_MATRIX_HPP_

#include <Eigen/Core>
#include <iosfwd>
#include <string>

#include "ferm/rational.hpp"

namespace ferm {

using RationalMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using RationalVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

// Matrix text: first line n, then n rows of n rationals. Throws FormatError.
RationalMatrix read_matrix(std::istream& in);
RationalMatrix read_matrix_file(const std::string& path);
std::string format_matrix(const RationalMatrix& a);

// Row-major single-line rendering, e.g. "[[1,2],[3,4]]", for report witnesses.
std::string inline_matrix(const RationalMatrix& a);

RationalMatrix identity_matrix(int n);

}  // namespace ferm

#endif  // FERM_MATRIX_HPP_
