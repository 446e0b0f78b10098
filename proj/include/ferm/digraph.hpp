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

#ifndef FERM_DIGRAPH_HPP_
#define FERM_DIGRAPH_HPP_

#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ferm/matrix.hpp"
#include "ferm/rational.hpp"

namespace ferm {

// Directed edge (u, v), 1-based; u == v is a loop.
struct Edge {
  int u = 0;
  int v = 0;
  friend bool operator==(const Edge& a, const Edge& b) { return a.u == b.u && a.v == b.v; }
  friend bool operator!=(const Edge& a, const Edge& b) { return !(a == b); }
  friend bool operator<(const Edge& a, const Edge& b) { return a.u != b.u ? a.u < b.u : a.v < b.v; }
  std::string str() const { return "(" + std::to_string(u) + "," + std::to_string(v) + ")"; }
};

// n-vertex digraph with rational edge weights, loops allowed, at most one
// edge per ordered pair. An absent edge has weight 0; stored edges may carry
// weight 0 only when built with keep_zeros.
class WeightedDigraph {
 public:
  explicit WeightedDigraph(int n = 0) : n_(n) {}

  static WeightedDigraph from_matrix(const RationalMatrix& a, bool keep_zeros = false);
  RationalMatrix adjacency() const;

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(w_.size()); }
  int add_vertex() { return ++n_; }

  bool has_edge(int u, int v) const { return w_.count({u, v}) != 0; }
  bool has_edge(const Edge& e) const { return has_edge(e.u, e.v); }
  Rational weight(int u, int v) const;
  Rational weight(const Edge& e) const { return weight(e.u, e.v); }

  // Throws InvalidArgument if the edge already exists or a vertex is out of range.
  void add_edge(int u, int v, const Rational& w);
  // Inserts or overwrites.
  void set_weight(int u, int v, const Rational& w);
  void remove_edge(int u, int v);

  std::vector<Edge> edges() const;
  const std::map<std::pair<int, int>, Rational>& edge_map() const { return w_; }
  std::vector<int> out_neighbors(int u) const;

  friend bool operator==(const WeightedDigraph& a, const WeightedDigraph& b) {
    return a.n_ == b.n_ && a.w_ == b.w_;
  }

 private:
  void check_vertex(int u) const;

  int n_ = 0;
  std::map<std::pair<int, int>, Rational> w_;
};

// Graph text: "n m", then m lines "u v weight". Throws FormatError.
WeightedDigraph read_graph(std::istream& in);
WeightedDigraph read_graph_file(const std::string& path);
std::string format_graph(const WeightedDigraph& g);

// Complete digraph on n vertices with all loops.
WeightedDigraph complete_looped_digraph(int n, const Rational& w = Rational(1));

}  // namespace ferm

#endif  // FERM_DIGRAPH_HPP_
