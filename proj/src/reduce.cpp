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

#include "ferm/reduce.hpp"

#include <deque>
#include <map>

#include "ferm/cluster.hpp"
#include "ferm/cycle_covers.hpp"
#include "ferm/errors.hpp"

namespace ferm {

namespace {

class Reducer {
 public:
  Reducer(const WeightedDigraph& g, const Rational& k, const std::vector<int>& protect)
      : n_(g.vertex_count()), k_(k), out_(n_ + 1), in_(n_ + 1), loop_(n_ + 1), alive_(n_ + 1, 1),
        protected_(n_ + 1, 0), queued_(n_ + 1, 0) {
    alive_[0] = 0;
    for (int v : protect) protected_.at(v) = 1;
    for (const auto& [e, w] : g.edge_map()) {
      if (w.is_zero()) continue;
      if (e.first == e.second)
        loop_[e.first] = w;
      else {
        out_[e.first][e.second] = w;
        in_[e.second][e.first] = w;
      }
    }
    for (int v = 1; v <= n_; ++v) push(v);
  }

  ReducedGraph run() {
    ReducedGraph r;
    while (!queue_.empty() && !zero_) {
      int v = queue_.front();
      queue_.pop_front();
      queued_[v] = 0;
      if (alive_[v]) step(v);
    }
    r.factor = factor_;
    r.zero = zero_;
    r.eliminated = eliminated_;
    if (zero_) {
      r.factor = 0;
      return r;
    }
    std::vector<int> new_id(n_ + 1, 0);
    for (int v = 1; v <= n_; ++v)
      if (alive_[v]) {
        r.original_id.push_back(v);
        new_id[v] = static_cast<int>(r.original_id.size());
      }
    r.graph = WeightedDigraph(static_cast<int>(r.original_id.size()));
    for (int v = 1; v <= n_; ++v) {
      if (!alive_[v]) continue;
      if (!loop_[v].is_zero()) r.graph.add_edge(new_id[v], new_id[v], loop_[v]);
      for (const auto& [t, w] : out_[v])
        if (!w.is_zero()) r.graph.add_edge(new_id[v], new_id[t], w);
    }
    return r;
  }

 private:
  void push(int v) {
    if (v >= 1 && alive_[v] && !queued_[v]) {
      queued_[v] = 1;
      queue_.push_back(v);
    }
  }

  void set_arc(int x, int y, const Rational& w) {
    if (x == y) {
      loop_[x] = w;
    } else if (w.is_zero()) {
      out_[x].erase(y);
      in_[y].erase(x);
    } else {
      out_[x][y] = w;
      in_[y][x] = w;
    }
    push(x);
    push(y);
  }

  Rational arc(int x, int y) const {
    if (x == y) return loop_[x];
    auto it = out_[x].find(y);
    return it == out_[x].end() ? Rational(0) : it->second;
  }

  void remove_vertex(int v) {
    for (const auto& [t, w] : out_[v]) {
      in_[t].erase(v);
      push(t);
    }
    for (const auto& [s, w] : in_[v]) {
      out_[s].erase(v);
      push(s);
    }
    out_[v].clear();
    in_[v].clear();
    loop_[v] = 0;
    alive_[v] = 0;
    ++eliminated_;
  }

  // Drops every out-arc of x except x->keep (including x's loop).
  void force_out(int x, int keep) {
    std::vector<int> drop;
    for (const auto& [t, w] : out_[x])
      if (t != keep) drop.push_back(t);
    for (int t : drop) set_arc(x, t, 0);
    if (!loop_[x].is_zero()) set_arc(x, x, 0);
  }

  void force_in(int y, int keep) {
    std::vector<int> drop;
    for (const auto& [s, w] : in_[y])
      if (s != keep) drop.push_back(s);
    for (int s : drop) set_arc(s, y, 0);
    if (!loop_[y].is_zero()) set_arc(y, y, 0);
  }

  void step(int v) {
    const bool has_loop = !loop_[v].is_zero();
    const size_t nin = in_[v].size(), nout = out_[v].size();
    if (!has_loop && (nin == 0 || nout == 0)) {
      zero_ = true;
      return;
    }
    if (protected_[v]) return;
    if (has_loop && (nin == 0 || nout == 0)) {
      factor_ *= -k_ * loop_[v];
      remove_vertex(v);
      return;
    }
    if (has_loop && nin == 1 && nout == 1) {
      const int x = in_[v].begin()->first, y = out_[v].begin()->first;
      const Rational c = -k_ * loop_[v];
      const Rational through = in_[v].begin()->second * out_[v].begin()->second / c;
      factor_ *= c;
      remove_vertex(v);
      set_arc(x, y, arc(x, y) + through);
      return;
    }
    if (!has_loop && nin == 1) {
      const int x = in_[v].begin()->first;
      const Rational wxv = in_[v].begin()->second;
      force_out(x, v);
      std::vector<std::pair<int, Rational>> outs(out_[v].begin(), out_[v].end());
      remove_vertex(v);
      for (const auto& [y, w] : outs) set_arc(x, y, arc(x, y) + wxv * w);
      return;
    }
    if (!has_loop && nout == 1) {
      const int y = out_[v].begin()->first;
      const Rational wvy = out_[v].begin()->second;
      force_in(y, v);
      std::vector<std::pair<int, Rational>> ins(in_[v].begin(), in_[v].end());
      remove_vertex(v);
      for (const auto& [x, w] : ins) set_arc(x, y, arc(x, y) + w * wvy);
      return;
    }
  }

  int n_;
  Rational k_;
  std::vector<std::map<int, Rational>> out_, in_;
  std::vector<Rational> loop_;
  std::vector<char> alive_, protected_, queued_;
  std::deque<int> queue_;
  Rational factor_{1};
  bool zero_ = false;
  int eliminated_ = 0;
};

}  // namespace

ReducedGraph reduce_for_fermionant(const WeightedDigraph& g, const Rational& k, const std::vector<int>& protect) {
  if (k.is_zero()) throw InvalidArgument("reduction requires k != 0");
  return Reducer(g, k, protect).run();
}

Rational evaluate_fermionant(const WeightedDigraph& g, const Rational& k, const std::vector<int>& kept_hint,
                             int dp_limit) {
  if (k.is_zero()) return g.vertex_count() == 0 ? Rational(1) : Rational(0);
  ReducedGraph r = reduce_for_fermionant(g, k, kept_hint);
  if (r.zero) return Rational(0);
  const int n = r.graph.vertex_count();
  if (n == 0) return r.factor;
  if (n <= dp_limit) return r.factor * fermionant_dp(r.graph, k);
  std::vector<int> new_id(g.vertex_count() + 1, 0);
  for (size_t i = 0; i < r.original_id.size(); ++i) new_id[r.original_id[i]] = static_cast<int>(i) + 1;
  std::vector<int> kept;
  for (int v : kept_hint)
    if (new_id[v]) kept.push_back(new_id[v]);
  if (kept.empty()) throw EnumerationTooLarge("graph too large for the subset DP and no kept set given");
  return r.factor * evaluate_with_clusters(r.graph, kept, k).total;
}

}  // namespace ferm
