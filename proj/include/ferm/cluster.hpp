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

#ifndef FERM_CLUSTER_HPP_
#define FERM_CLUSTER_HPP_

// Fermionant evaluation for graphs made of a small kept vertex set K plus
// small clusters hanging off it (the shape produced by gadget insertion).
// Clusters are the connected components of the vertices outside K; no arc may
// join two different clusters.

#include <map>
#include <tuple>
#include <vector>

#include "ferm/digraph.hpp"
#include "ferm/rational.hpp"

namespace ferm {

// A path through a cluster: entered from kept vertex `from` at internal vertex
// `entry`, leaving to kept vertex `to`. All ids are graph vertex ids.
struct Passage {
  int from = 0;
  int entry = 0;
  int to = 0;
  friend bool operator<(const Passage& a, const Passage& b) {
    return std::tie(a.from, a.entry, a.to) < std::tie(b.from, b.entry, b.to);
  }
  friend bool operator==(const Passage& a, const Passage& b) {
    return a.from == b.from && a.entry == b.entry && a.to == b.to;
  }
};

// Sum over internal configurations of one cluster, keyed by the sorted list
// of passages used. Weight includes entry and exit arcs and (-k) per internal
// cycle. The empty key holds the covers where no path crosses the cluster.
using ClusterTable = std::map<std::vector<Passage>, Rational>;

ClusterTable cluster_table(const WeightedDigraph& g, const std::vector<int>& kept,
                           const std::vector<int>& internal, const Rational& k);

struct ClusterEvaluation {
  Rational total;
  // Keyed by the successor (graph id) of each kept vertex, in `kept` order.
  std::map<std::vector<int>, Rational> by_first_hop;
};

struct ClusterOptions {
  int max_kept = 12;
  int max_cluster = 14;
  bool collect_first_hops = false;
};

// Plain fermionant of g. Throws InvalidArgument if two clusters are joined by
// an arc, EnumerationTooLarge beyond the option limits.
ClusterEvaluation evaluate_with_clusters(const WeightedDigraph& g, const std::vector<int>& kept,
                                         const Rational& k, const ClusterOptions& options = {});

// Connected components of the vertices outside `kept` (undirected adjacency
// among non-kept vertices), each sorted ascending.
std::vector<std::vector<int>> clusters_outside(const WeightedDigraph& g, const std::vector<int>& kept);

}  // namespace ferm

#endif  // FERM_CLUSTER_HPP_
