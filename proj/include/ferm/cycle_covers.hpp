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

#ifndef FERM_CYCLE_COVERS_HPP_
#define FERM_CYCLE_COVERS_HPP_

#include <functional>
#include <vector>

#include "ferm/dense.hpp"
#include "ferm/digraph.hpp"
#include "ferm/matrix.hpp"
#include "ferm/permutation.hpp"
#include "ferm/rational.hpp"

namespace ferm {

// A permutation all of whose edges (i, pi(i)) are present in the graph.
struct CycleCover {
  Permutation permutation;
};

// Every cycle cover of g exactly once, in lexicographic order of successor
// lists. Subject to the enumeration cap.
std::vector<CycleCover> cycle_covers(const WeightedDigraph& g);

// Backtracking over present edges only, choosing the most constrained vertex
// first. visit(succ0) receives 0-based successors. max_vertices replaces the
// permutation cap: sparse graphs with many vertices may still have few covers.
void for_each_cycle_cover(const WeightedDigraph& g, int max_vertices,
                          const std::function<void(const std::vector<int>&)>& visit);

Rational cover_weight(const WeightedDigraph& g, const CycleCover& c);

// Plain-convention fermionant by cover enumeration (for_each_cycle_cover).
Rational fermionant_by_covers(const WeightedDigraph& g, const Rational& k, int max_vertices);

// Plain-convention fermionant by subset DP: cycle weights C(S) through
// min(S), then g(R) = sum over S containing min(R) of (-k) C(S) g(R \ S).
// O(3^n) time; refuses n > 18.
Rational fermionant_dp(const WeightedDigraph& g, const Rational& k);

// c[m] = total weight of covers with exactly m cycles, m = 1..n.
struct StratifiedWeights {
  std::vector<Rational> c;  // c[0] is unused and zero

  int n() const { return static_cast<int>(c.size()) - 1; }
  const Rational& operator[](int m) const { return c.at(m); }
  // sum_m (-k)^m c_m, the plain fermionant.
  Rational evaluate(const Rational& k) const;
  friend bool operator==(const StratifiedWeights& a, const StratifiedWeights& b) { return a.c == b.c; }
};

StratifiedWeights stratified_weights(const WeightedDigraph& g);

// Total weight of Hamiltonian cycles (the c_1 stratum).
Rational hamiltonian(const WeightedDigraph& g);
Rational hamiltonian(const RationalMatrix& a);

Rational determinant_exact(const RationalMatrix& a);

}  // namespace ferm

#endif  // FERM_CYCLE_COVERS_HPP_
