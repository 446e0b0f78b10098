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

#include "ferm/digraph.hpp"

#include <fstream>
#include <sstream>

#include "ferm/errors.hpp"

namespace ferm {

WeightedDigraph WeightedDigraph::from_matrix(const RationalMatrix& a, bool keep_zeros) {
  if (a.rows() != a.cols()) throw InvalidArgument("adjacency matrix must be square");
  WeightedDigraph g(static_cast<int>(a.rows()));
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (keep_zeros || !a(i, j).is_zero()) g.w_[{i + 1, j + 1}] = a(i, j);
  return g;
}

RationalMatrix WeightedDigraph::adjacency() const {
  RationalMatrix a = RationalMatrix::Zero(n_, n_);
  for (const auto& [e, w] : w_) a(e.first - 1, e.second - 1) = w;
  return a;
}

void WeightedDigraph::check_vertex(int u) const {
  if (u < 1 || u > n_) throw InvalidArgument("vertex " + std::to_string(u) + " out of range");
}

Rational WeightedDigraph::weight(int u, int v) const {
  auto it = w_.find({u, v});
  return it == w_.end() ? Rational(0) : it->second;
}

void WeightedDigraph::add_edge(int u, int v, const Rational& w) {
  check_vertex(u);
  check_vertex(v);
  if (!w_.emplace(std::make_pair(u, v), w).second)
    throw InvalidArgument("duplicate edge " + Edge{u, v}.str());
}

void WeightedDigraph::set_weight(int u, int v, const Rational& w) {
  check_vertex(u);
  check_vertex(v);
  w_[{u, v}] = w;
}

void WeightedDigraph::remove_edge(int u, int v) { w_.erase({u, v}); }

std::vector<Edge> WeightedDigraph::edges() const {
  std::vector<Edge> out;
  out.reserve(w_.size());
  for (const auto& kv : w_) out.push_back({kv.first.first, kv.first.second});
  return out;
}

std::vector<int> WeightedDigraph::out_neighbors(int u) const {
  std::vector<int> out;
  for (auto it = w_.lower_bound({u, 0}); it != w_.end() && it->first.first == u; ++it)
    out.push_back(it->first.second);
  return out;
}

WeightedDigraph read_graph(std::istream& in) {
  long n = 0, m = 0;
  if (!(in >> n >> m) || n < 1 || m < 0) throw FormatError("graph: expected header 'n m'");
  WeightedDigraph g(static_cast<int>(n));
  for (long i = 0; i < m; ++i) {
    long u = 0, v = 0;
    std::string w;
    if (!(in >> u >> v >> w)) throw FormatError("graph: expected " + std::to_string(m) + " edge lines");
    if (u < 1 || u > n || v < 1 || v > n)
      throw FormatError("graph: vertex out of range on edge line " + std::to_string(i + 1));
    if (g.has_edge(static_cast<int>(u), static_cast<int>(v)))
      throw FormatError("graph: duplicate edge " + Edge{int(u), int(v)}.str());
    g.add_edge(static_cast<int>(u), static_cast<int>(v), Rational::parse(w));
  }
  std::string extra;
  if (in >> extra) throw FormatError("graph: trailing token '" + extra + "'");
  return g;
}

WeightedDigraph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open graph file " + path);
  return read_graph(in);
}

std::string format_graph(const WeightedDigraph& g) {
  std::ostringstream os;
  os << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const auto& [e, w] : g.edge_map()) os << e.first << ' ' << e.second << ' ' << w << '\n';
  return os.str();
}

WeightedDigraph complete_looped_digraph(int n, const Rational& w) {
  WeightedDigraph g(n);
  for (int u = 1; u <= n; ++u)
    for (int v = 1; v <= n; ++v) g.add_edge(u, v, w);
  return g;
}

}  // namespace ferm
