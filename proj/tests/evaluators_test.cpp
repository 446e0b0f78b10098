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

#include <gtest/gtest.h>

#include "ferm/cluster.hpp"
#include "ferm/cycle_covers.hpp"
#include "ferm/random.hpp"
#include "ferm/reduce.hpp"

namespace ferm {
namespace {

WeightedDigraph random_graph(Rng& rng, int n, int density_percent) {
  WeightedDigraph g(n);
  for (int u = 1; u <= n; ++u)
    for (int v = 1; v <= n; ++v)
      if (rng.uniform(0, 99) < density_percent) g.add_edge(u, v, rng.nonzero_rational());
  return g;
}

TEST(ClusterTest, MatchesBruteForceOnRandomSplits) {
  Rng rng(21);
  for (int t = 0; t < 60; ++t) {
    const int n = static_cast<int>(rng.uniform(2, 8));
    WeightedDigraph g = random_graph(rng, n, 45);
    std::vector<int> kept;
    for (int v = 1; v <= n; ++v)
      if (rng.coin()) kept.push_back(v);
    Rational k = rng.nonzero_rational();
    EXPECT_EQ(evaluate_with_clusters(g, kept, k).total, fermionant_dp(g, k)) << format_graph(g);
  }
}

TEST(ClusterTest, FirstHopClassesSumToTotal) {
  Rng rng(22);
  WeightedDigraph g = random_graph(rng, 7, 50);
  ClusterOptions opt;
  opt.collect_first_hops = true;
  ClusterEvaluation ev = evaluate_with_clusters(g, {1, 4, 6}, Rational(3), opt);
  Rational sum(0);
  for (const auto& [key, w] : ev.by_first_hop) sum += w;
  EXPECT_EQ(sum, ev.total);
}

TEST(ReduceTest, PreservesFermionantOnSparseGraphs) {
  Rng rng(23);
  for (int t = 0; t < 200; ++t) {
    const int n = static_cast<int>(rng.uniform(1, 9));
    WeightedDigraph g = random_graph(rng, n, static_cast<int>(rng.uniform(10, 50)));
    Rational k = rng.nonzero_rational();
    ReducedGraph r = reduce_for_fermionant(g, k);
    Rational expected = fermionant_dp(g, k);
    Rational got = r.zero ? Rational(0) : r.factor * fermionant_dp(r.graph, k);
    ASSERT_EQ(got, expected) << format_graph(g) << " k=" << k;
  }
}

TEST(ReduceTest, LoopGadgetCollapsesToFactor) {
  // p = 1 on a 2-cycle with x = 2; q = 3 hangs off p with a loop.
  WeightedDigraph g(3);
  g.add_edge(1, 2, 5);
  g.add_edge(2, 1, 7);
  g.add_edge(2, 2, 11);
  g.add_edge(1, 3, 1);
  g.add_edge(3, 1, 1);
  g.add_edge(3, 3, 1);
  Rational k(3);
  ReducedGraph r = reduce_for_fermionant(g, k, {1, 2});
  EXPECT_EQ(r.eliminated, 1);
  EXPECT_EQ(r.factor, Rational(-3));
  EXPECT_EQ(r.graph.weight(1, 1), Rational::parse("-1/3"));
  EXPECT_EQ(r.factor * fermionant_dp(r.graph, k), fermionant_dp(g, k));
}

TEST(ReduceTest, EvaluateFallsBackToClusters) {
  Rng rng(24);
  WeightedDigraph g(16);
  // Kept ring 1..4 with three-vertex pockets between consecutive kept vertices.
  int next = 5;
  for (int i = 1; i <= 4; ++i) {
    int j = i % 4 + 1;
    int a = next++, b = next++, c = next++;
    g.add_edge(i, a, rng.nonzero_rational());
    g.add_edge(a, b, rng.nonzero_rational());
    g.add_edge(b, c, rng.nonzero_rational());
    g.add_edge(c, a, rng.nonzero_rational());
    g.add_edge(b, j, rng.nonzero_rational());
    g.add_edge(a, a, rng.nonzero_rational());
    g.add_edge(c, c, rng.nonzero_rational());
    g.add_edge(b, b, rng.nonzero_rational());
    g.add_edge(i, i, rng.nonzero_rational());
  }
  Rational k(2);
  EXPECT_EQ(evaluate_fermionant(g, k, {1, 2, 3, 4}, 0), fermionant_dp(g, k));
}

}  // namespace
}  // namespace ferm
