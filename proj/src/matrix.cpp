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

#include "ferm/matrix.hpp"

#include <fstream>
#include <sstream>

#include "ferm/errors.hpp"

namespace ferm {

RationalMatrix read_matrix(std::istream& in) {
  std::string tok;
  if (!(in >> tok)) throw FormatError("matrix: missing dimension");
  long n = 0;
  try {
    size_t used = 0;
    n = std::stol(tok, &used);
    if (used != tok.size()) throw FormatError("");
  } catch (const std::exception&) {
    throw FormatError("matrix: bad dimension '" + tok + "'");
  }
  if (n < 1) throw FormatError("matrix: dimension must be >= 1");
  RationalMatrix a(n, n);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) {
      if (!(in >> tok)) throw FormatError("matrix: expected " + std::to_string(n * n) + " entries");
      a(i, j) = Rational::parse(tok);
    }
  if (in >> tok) throw FormatError("matrix: trailing token '" + tok + "'");
  return a;
}

RationalMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open matrix file " + path);
  return read_matrix(in);
}

std::string format_matrix(const RationalMatrix& a) {
  std::ostringstream os;
  os << a.rows() << '\n';
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) os << (j ? " " : "") << a(i, j);
    os << '\n';
  }
  return os.str();
}

std::string inline_matrix(const RationalMatrix& a) {
  std::ostringstream os;
  os << '[';
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    os << (i ? ",[" : "[");
    for (Eigen::Index j = 0; j < a.cols(); ++j) os << (j ? "," : "") << a(i, j);
    os << ']';
  }
  os << ']';
  return os.str();
}

RationalMatrix identity_matrix(int n) {
  RationalMatrix a = RationalMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) a(i, i) = 1;
  return a;
}

}  // namespace ferm
