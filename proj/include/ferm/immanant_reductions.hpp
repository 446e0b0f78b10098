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

#ifndef FERM_IMMANANT_REDUCTIONS_HPP_
#define FERM_IMMANANT_REDUCTIONS_HPP_

// Computing Ferm_2 and two-column immanants from other two-column immanants
// evaluated on cycle-padded matrices.
//
// Two-column shapes are written by column lengths, cols[c1,c2]. Padding A by
// an s-cycle turns im_Y into the signed sum of im_{Y minus strip} over border
// strips of size s; every identity below is derived from that expansion and
// then checked by brute force.

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ferm/matrix.hpp"
#include "ferm/random.hpp"
#include "ferm/rational.hpp"
#include "ferm/report.hpp"
#include "ferm/young.hpp"

namespace ferm {

// base (n x n) block-diagonal with the permutation matrix of one l-cycle:
// composite(n + i, n + (i + 1) mod l) = 1.
struct PaddedMatrix {
  RationalMatrix base;
  int cycle_length = 0;
  RationalMatrix composite;
};

// Throws InvalidArgument for l < 1.
PaddedMatrix pad_with_cycle(const RationalMatrix& a, int l);

using Expansion = std::map<YoungDiagram, Rational>;

// Coefficients c_Z with im_Y(pad(A, s)) = sum_Z c_Z im_Z(A). s = 0 means no
// padding and returns {Y: 1}.
Expansion padded_expansion(const YoungDiagram& y, int s);

std::string expansion_str(const Expansion& e);

// Called with (shape, matrix) where shape's weight equals the matrix size.
using ImmanantOracle = std::function<Rational(const YoungDiagram&, const RationalMatrix&)>;

// immanant_sparse, which handles padded matrices without the permutation cap.
ImmanantOracle brute_force_oracle();

struct OracleTerm {
  std::string role;  // "alpha", "a" or "b"
  int index = 0;     // l for alpha and a, padding s for b
  YoungDiagram shape;
  int padding = 0;
  Rational coeff;
};

// A term evaluated without the oracle: the determinant, or a residual
// immanant with few boxes in the second column.
struct DirectTerm {
  std::string role;  // "det" or "residual"
  YoungDiagram shape;
  Rational coeff;
};

struct CoefficientLedger {
  int n = 0;
  int delta = 0;
  std::map<int, Rational> alpha;     // l -> coefficient of im_cols[l,l](pad(A, 2l-n))
  Rational det_coeff;
  std::map<int, Rational> a;         // l -> coefficient on cols[l+1+delta,l+1], padding 2l-n+delta+2
  std::map<int, Rational> b;         // s -> coefficient on cols[c+delta,c], padding s
  std::map<int, Rational> residual;  // j -> coefficient of im_cols[j,n-j] evaluated directly
  std::vector<OracleTerm> oracle_terms;
  std::vector<DirectTerm> direct_terms;
  std::vector<std::string> equations;  // the solved system, one line per target shape

  // Sum of every term's expansion in the im_cols[j,n-j](A) basis.
  Expansion expansion() const;
  // Sum over the terms of the given roles, each oracle term through oracle on
  // the padded matrix; an empty role list means all terms.
  Rational evaluate(const RationalMatrix& a, const ImmanantOracle& oracle,
                    const std::vector<std::string>& roles = {}) const;
  std::string str() const;
};

// sum_j d_cols[j,n-j] im_cols[j,n-j], the Ferm_2 expansion.
Expansion ferm2_target(const DecompositionTable& d);

// Coefficients alpha_l (square immanants padded by 2l-n, l in [ceil(n/2),
// n-1]) and det_coeff such that the terms expand to ferm2_target. Solved as
// the triangular system the strips impose; throws SingularSystem if it is
// not invertible. d must be the table for (n, 2).
CoefficientLedger alpha_coeffs(int n, const DecompositionTable& d);

// Ferm_2(A) from square two-column immanants on padded copies of A plus one
// determinant. *calls receives the number of oracle calls.
Rational ferm2_via_square_immanants(const RationalMatrix& a, const ImmanantOracle& oracle, int* calls = nullptr);

// Constant column difference delta >= 1: b terms cols[c+delta,c] padded by
// s <= delta fix the low band j <= (n+delta)/2; a terms cols[l+1+delta,l+1]
// padded by 2l-n+delta+2 fix the band up to n-delta-1; the top band
// (at most delta boxes in column 2) is residual. Every oracle shape has
// column difference delta. d must be the table for (n, 2).
CoefficientLedger constant_delta_ledger(int n, int delta, const DecompositionTable& d);

// Branch identity on the square cols[l,l] padded by 2l-n, checked
// symbolically against the strip signs and numerically on a.
Report branch_identity(const RationalMatrix& a, int l);

// Base matrix size the two-column identity for cols[k1,k2] runs on.
int two_column_base_size(int k1, int k2);

// Whichever identity applies to cols[k1,k2]: k2 = 0 (single column), k1 = k2
// (square route), k1 > 2 k2 (single strip), otherwise the [2 delta, delta]
// pair identity. a must have two_column_base_size(k1, k2) rows.
Report two_column_identities(int k1, int k2, const RationalMatrix& a);

// Ledger solve plus both chains and the assembled total against Ferm_2(A).
Report constant_delta_identities(int n, int delta, const RationalMatrix& a);

// A family of diagrams indexed by m, given by column lengths.
struct DiagramFamily {
  std::string name;
  int max_columns = 2;
  double epsilon = 0.5;  // growth exponent the right-hand boxes must reach
  std::function<std::vector<int>(int)> columns;
};

// "square" cols[m,m], "bounded" cols[m,1], "sqrt" cols[m,ceil(sqrt m)],
// "three" cols[m,m,ceil(sqrt m)]. Throws InvalidArgument for other names.
DiagramFamily diagram_family(const std::string& name);

// Classifies the family from its samples (bounded right-hand boxes: no
// reduction attempted), strips to the last two columns, picks the
// two-column route per sample and verifies it at desk scale on random bases.
// Row removal between diagram sizes is an external result and is assumed,
// never computed; every report says so.
Report family_reduction_pipeline(const DiagramFamily& family, const std::vector<int>& samples, int trials,
                                 std::uint64_t seed);

}  // namespace ferm

#endif  // FERM_IMMANANT_REDUCTIONS_HPP_
