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

#ifndef FERM_REDUCE_HPP_
#define FERM_REDUCE_HPP_

// Exact local simplifications that preserve the plain fermionant up to a
// tracked factor:
//   forced loop   v has a loop and no other in- (or out-) arc: factor -k*loop(v), drop v.
//   looped relay  v has loop l != 0, one other in-neighbor x, one other
//                 out-neighbor y: factor -k*l, arc x->y += w(x,v) w(v,y) / (-k*l)
//                 (a loop at x when x == y), drop v.
//   series        v has no loop and a single in-neighbor x (or a single
//                 out-neighbor y): the arc is forced; x's other out-arcs (y's
//                 other in-arcs) are dropped and v is bypassed.
//   dead          v has no in- or out-arcs at all: the fermionant is 0.

#include <vector>

#include "ferm/digraph.hpp"
#include "ferm/rational.hpp"

namespace ferm {

struct ReducedGraph {
  WeightedDigraph graph;
  // original_id[v - 1] = vertex id of v in the input graph.
  std::vector<int> original_id;
  Rational factor{1};
  bool zero = false;
  int eliminated = 0;
};

// Vertices in `protect` are never eliminated (their arcs may still change).
// Requires k != 0.
ReducedGraph reduce_for_fermionant(const WeightedDigraph& g, const Rational& k,
                                   const std::vector<int>& protect = {});

// Reduce, then evaluate with the subset DP when at most dp_limit vertices
// remain, otherwise with the cluster evaluator over the surviving protected
// vertices. Plain convention.
Rational evaluate_fermionant(const WeightedDigraph& g, const Rational& k, const std::vector<int>& kept_hint = {},
                             int dp_limit = 14);

}  // namespace ferm

#endif  // FERM_REDUCE_HPP_
