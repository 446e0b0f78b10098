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

#ifndef FERM_YOUNG_HPP_
#define FERM_YOUNG_HPP_

// Young diagrams, border strips, Murnaghan-Nakayama characters, immanants and
// the character expansion of the fermionant.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ferm/matrix.hpp"
#include "ferm/permutation.hpp"
#include "ferm/rational.hpp"

namespace ferm {

// Row lengths, weakly decreasing and positive. The empty diagram has weight 0.
class YoungDiagram {
 public:
  YoungDiagram() = default;
  // Throws InvalidArgument unless rows are positive and weakly decreasing.
  explicit YoungDiagram(std::vector<int> rows);
  explicit YoungDiagram(const Partition& p) : rows_(p.parts()) {}

  const std::vector<int>& rows() const { return rows_; }
  int weight() const;
  int row_count() const { return static_cast<int>(rows_.size()); }
  int columns() const { return rows_.empty() ? 0 : rows_[0]; }
  std::vector<int> column_lengths() const;
  bool contains(int row, int col) const { return row >= 0 && row < row_count() && col >= 0 && col < rows_[row]; }
  Partition partition() const { return Partition(rows_); }
  // "[3,1]"; two-column diagrams can also be printed with cols_str.
  std::string str() const;

  friend bool operator==(const YoungDiagram& a, const YoungDiagram& b) { return a.rows_ == b.rows_; }
  friend bool operator!=(const YoungDiagram& a, const YoungDiagram& b) { return a.rows_ != b.rows_; }
  friend bool operator<(const YoungDiagram& a, const YoungDiagram& b) { return a.rows_ < b.rows_; }

 private:
  std::vector<int> rows_;
};

// "4,4,2,1" (row lengths). Throws FormatError.
YoungDiagram parse_diagram(const std::string& text);

// Diagram with at most two columns, given by column lengths c1 >= c2 >= 0.
YoungDiagram two_column(int c1, int c2);
// "cols[3,1]"; throws InvalidArgument for more than two columns.
std::string cols_str(const YoungDiagram& y);

struct SkewHook {
  std::vector<std::pair<int, int>> cells;  // (row, col), 0-based
  int height = 0;                           // rows spanned - 1
  YoungDiagram remainder;
  int size() const { return static_cast<int>(cells.size()); }
};

// Every border strip of the given size whose removal leaves a diagram, ordered
// by the strip's top-right cell. Throws InvalidArgument for size < 1.
std::vector<SkewHook> skew_hooks(const YoungDiagram& y, int size);

// chi_Y at cycle type t. Memoized per thread on (diagram, remaining type),
// consuming the largest part first. Throws InvalidArgument on weight mismatch.
long long mn_character(const YoungDiagram& y, const Partition& t);

// Same recursion without the memo, consuming cycles in the given order.
long long mn_character_in_order(const YoungDiagram& y, const std::vector<int>& cycles);

// f^Y by the hook length formula.
mpz_class diagram_dimension(const YoungDiagram& y);

// n! / z_t, the number of permutations of cycle type t.
mpz_class class_size(const Partition& t);

// Total weight per cycle type over permutations supported on nonzero entries,
// enumerated as cycle covers of the support graph. max_dim bounds the matrix
// size instead of the permutation cap, so block matrices with sparse blocks
// stay cheap.
std::map<std::vector<int>, Rational> class_weights_sparse(const RationalMatrix& a, int max_dim);

Rational immanant_from_weights(const YoungDiagram& y, const std::map<std::vector<int>, Rational>& weights);

// sum_pi chi_Y(pi) prod A(i, pi(i)). Subject to the enumeration cap.
Rational immanant(const YoungDiagram& y, const RationalMatrix& a);

// As immanant, but enumerates supported permutations only (see
// class_weights_sparse).
Rational immanant_sparse(const YoungDiagram& y, const RationalMatrix& a, int max_dim = 16);

// Partitions of n with largest part <= k, [k,...] first.
std::vector<YoungDiagram> diagrams_with_max_columns(int n, int k);

struct DecompositionTable {
  int n = 0;
  Rational k;
  std::map<YoungDiagram, Rational> coeffs;  // zero coefficients omitted
  Rational at(const YoungDiagram& y) const;
};

// d_Y = (1/n!) sum_t |class t| (-k)^{len t} chi_Y(t), plain convention.
DecompositionTable decomposition_coeffs(int n, const Rational& k);

// (f^Y / n!) prod over cells (i, j) of (-k + j - i). Cross-check oracle.
Rational content_product_coeff(const YoungDiagram& y, const Rational& k);

struct DecompositionReport {
  int n = 0;
  Rational k;
  Rational fermionant_plain;
  Rational fermionant_signed;
  Rational expansion;         // sum_Y d_Y im_Y(A)
  bool plain_holds = false;   // plain == expansion
  bool signed_holds = false;  // signed == expansion, unflipped
  bool flipped_holds = false; // signed == (-1)^n expansion
  bool support_ok = true;     // for positive integer k, no d_Y with > k columns
  bool ok() const { return plain_holds && flipped_holds && support_ok; }
};

DecompositionReport verify_decomposition(const RationalMatrix& a, const Rational& k);

}  // namespace ferm

#endif  // FERM_YOUNG_HPP_
