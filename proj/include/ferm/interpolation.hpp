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

#ifndef FERM_INTERPOLATION_HPP_
#define FERM_INTERPOLATION_HPP_

// Recovering stratified cycle-cover weights, and hence the Hamiltonian, from
// fermionant values of replicated graphs; and the modular chain that moves
// the reduction to {0,1} matrices.

#include <string>
#include <vector>

#include "ferm/cycle_covers.hpp"
#include "ferm/digraph.hpp"
#include "ferm/gadgets.hpp"
#include "ferm/rational.hpp"

namespace ferm {

// Unique solution of sum_{m=1..N} coeff_m * node_l^m = value_l, l = 1..N.
// Throws DegenerateNodes on duplicate or zero nodes, InvalidArgument on a
// length mismatch.
std::vector<Rational> vandermonde_solve(const std::vector<Rational>& nodes, const std::vector<Rational>& values);

struct InterpolationPlan {
  Rational k;
  int n = 0;
  int edges = 0;                // edges present in G (zero weights pruned)
  Rational alpha;               // ((1-k)/2)^(edges-n)
  std::vector<Rational> nodes;  // (-k)^l, l = 1..n
};

// Throws DegenerateNodes for k in {0, 1, -1}.
InterpolationPlan make_plan(const WeightedDigraph& g, const Rational& k);

struct InterpolationTrace {
  InterpolationPlan plan;
  std::vector<int> sizes;         // vertex count of F^l
  std::vector<Rational> values;   // f_l = plain fermionant of F^l
  std::vector<Rational> scaled;   // f_l / alpha^(l-1)
  // Ham(G) = sum_l ham_weights[l-1] * f_l.
  std::vector<Rational> ham_weights;
};

// Plain fermionant of a replicated or gadgeted graph, using the host vertices
// as the kept set when the graph is too large for the subset DP.
Rational gadgeted_fermionant(const GadgetedGraph& gg, const Rational& k);

StratifiedWeights recover_stratified(const WeightedDigraph& g, const Rational& k, const GadgetWiring& wiring,
                                     InterpolationTrace* trace = nullptr);

// c_1 of the recovered stratification. k = -1 is refused with a pointer to
// the permanent identity instead.
Rational hamiltonian_via_fermionant(const RationalMatrix& a, const Rational& k, const GadgetWiring& wiring,
                                    InterpolationTrace* trace = nullptr);

struct ModularStage {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct ModularReport {
  Rational k;
  int n = 0;
  Rational hamiltonian;
  std::vector<int> sizes;           // n_i
  std::vector<Rational> w_star;     // Ham = sum_i w*_i Ferm(P_i A)
  mpz_class omega;                  // product of the w*_i denominators
  std::vector<mpz_class> w_check;   // omega * w*_i
  mpz_class bound;                  // sum_i |w*_i| n_i! (2k)^(2 n_i), rounded up
  mpz_class lambda;
  std::vector<long> gamma_i;
  long gamma = 0;
  std::vector<int> eliminated_sizes;  // vertex counts of P'''_i A
  mpz_class lhs_mod;
  mpz_class rhs_mod;
  std::vector<ModularStage> stages;
  bool ok() const;
};

// Runs the chain on a {0,1} matrix A for integer k not in {0, 1, -1}: P_i A
// by replication, P'_i = 2k P_i, P''_i with -m mapped to (Lambda-1)m and
// reduced mod Lambda, P'''_i by weight elimination; checks each stage and the
// final congruence
//   Ham(A) (2k)^{n_n} (-k)^gamma omega == sum_i w^_i (2k)^{m_i} (-k)^{gamma-gamma_i} Ferm(P'''_i A)  (mod Lambda).
// lambda_override = 0 picks the smallest admissible Lambda; a value at or
// below the bound is refused with InvalidArgument.
ModularReport modular_pipeline(const RationalMatrix& a, const Rational& k, const GadgetWiring& wiring,
                               const mpz_class& lambda_override = 0);

}  // namespace ferm

#endif  // FERM_INTERPOLATION_HPP_
