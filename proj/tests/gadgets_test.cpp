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

#include "ferm/cycle_covers.hpp"
#include "ferm/errors.hpp"
#include "ferm/gadgets.hpp"
#include "ferm/permutation.hpp"
#include "ferm/random.hpp"
#include "ferm/reduce.hpp"

namespace ferm {
namespace {

const GadgetWiring& iff2() { return certified_iff_wiring(Rational(2)); }

Rational term(const WeightedDigraph& g, const std::vector<int>& pat, const Rational& k) {
  std::vector<int> img0(pat.size());
  Rational w(1);
  for (size_t x = 0; x < pat.size(); ++x) {
    img0[x] = pat[x] - 1;
    w *= g.weight(static_cast<int>(x) + 1, pat[x]);
  }
  return w * pow(-k, cycle_count_raw(img0));
}

WeightedDigraph random_graph(int n, Rng& rng, double density = 1.0) {
  WeightedDigraph g(n);
  for (int u = 1; u <= n; ++u)
    for (int v = 1; v <= n; ++v)
      if (rng.uniform(0, 999) < density * 1000) g.add_edge(u, v, rng.nonzero_rational());
  return g;
}

TEST(IffGadget, SearchFindsCorrectedMatrix) {
  const GadgetWiring& w = iff2();
  EXPECT_EQ(w.variant.describe(), "substitution(2,1)=-1/k");
  EXPECT_EQ(w.internal_count, 3);
  RationalMatrix m = printed_iff_matrix(2);
  m(1, 0) = Rational(-1, 2);
  EXPECT_EQ(w.internal_weights(), m);
  EXPECT_EQ(iff_transfer(w).matches(2), 7);
}

TEST(IffGadget, PrintedMatrixFailsTransfer) {
  GadgetWiring w = make_iff_wiring(2, MatrixVariant{}, iff2().attach_e, iff2().attach_e_prime);
  EXPECT_LT(iff_transfer(w).matches(2), 7);
}

TEST(IffGadget, MinusOneIsPrintedMatrix) {
  const GadgetWiring& w = certified_iff_wiring(-1);
  EXPECT_EQ(w.internal_weights(), printed_iff_matrix(-1));
  EXPECT_EQ(iff_contract(-1).at("neither").factor, 1);
}

TEST(IffGadget, ContractAtKOne) {
  EXPECT_EQ(iff_contract(1).at("neither").factor, 0);
  EXPECT_EQ(iff_contract(2).at("neither").factor, Rational(-1, 2));
}

TEST(IffGadget, CertificateAtSeveralK) {
  CertifyOptions opt;
  opt.weightings = 3;
  const GadgetCertificate cert = certify_iff(iff2(), opt);
  EXPECT_TRUE(cert.passed());
  EXPECT_GT(cert.classes_checked, 1000);
  EXPECT_EQ(cert.k_samples.size(), 4u);
  for (const TestbedRow& r : cert.rows) EXPECT_EQ(r.expected, r.observed);
}

TEST(IffGadget, PerCoverCases) {
  Rng rng(5);
  const Rational k(2);
  WeightedDigraph g = random_graph(3, rng);
  const Edge e{1, 2}, ep{2, 3};
  GadgetedGraph gg = insert_many_iff_tracked(g, {{e, ep}}, iff2());
  EXPECT_EQ(gg.graph.vertex_count(), 6);
  auto sums = host_class_sums(gg, k);
  // [2,3,1] uses both edges, [2,1,3] only e, [1,3,2] only e', identity neither.
  EXPECT_EQ((sums[{2, 3, 1}]), (term(g, {2, 3, 1}, k)));
  EXPECT_EQ((sums[{2, 1, 3}]), 0);
  EXPECT_EQ((sums[{1, 3, 2}]), 0);
  EXPECT_EQ((sums[{1, 2, 3}]), (Rational(-1, 2) * term(g, {1, 2, 3}, k)));
}

TEST(IffGadget, TransferMatchesClusterTable) {
  for (const auto& [attach_e, attach_ep] : std::vector<std::pair<Attachment, Attachment>>{
           {{0, {1}}, {2, {2}}}, {{0, {0, 1}}, {1, {2}}}, {{2, {0}}, {0, {1, 2}}}}) {
    for (const MatrixVariant& v : {MatrixVariant{}, MatrixVariant{true, 0, -1, -1, -1},
                                   MatrixVariant{false, 0x55, -1, -1, -1}}) {
      GadgetWiring w = make_iff_wiring(3, v, attach_e, attach_ep);
      IffTransfer t = iff_transfer(w);
      // Direct check of the "neither" value: sum over covers of the internal block.
      RationalMatrix m = w.internal_weights();
      EXPECT_EQ(t.neither, fermionant_by_covers(WeightedDigraph::from_matrix(m), 3, 3));
    }
  }
}

TEST(InsertIff, Errors) {
  WeightedDigraph g = complete_looped_digraph(2);
  EXPECT_THROW((insert_iff(g, {1, 2}, {1, 2}, iff2())), InvalidArgument);
  g.remove_edge(2, 1);
  EXPECT_THROW((insert_iff(g, {1, 2}, {2, 1}, iff2())), InvalidArgument);
  WeightedDigraph h = complete_looped_digraph(3);
  EXPECT_THROW((insert_many_iff(h, {{{1, 2}, {2, 3}}, {{2, 3}, {3, 1}}}, iff2())), InvalidArgument);
}

TEST(InsertIff, ManyWithOnePairIsSingle) {
  Rng rng(9);
  WeightedDigraph g = random_graph(3, rng);
  const auto edges = g.edges();
  ASSERT_GE(edges.size(), 2u);
  EXPECT_EQ((insert_many_iff(g, {{edges[0], edges[1]}}, iff2())), insert_iff(g, edges[0], edges[1], iff2()));
}

TEST(InsertIff, TwoPairsAggregate) {
  Rng rng(21);
  const Rational k(2);
  WeightedDigraph g = random_graph(3, rng);
  const std::vector<std::pair<Edge, Edge>> pairs{{{1, 2}, {2, 3}}, {{1, 1}, {3, 3}}};
  GadgetedGraph gg = insert_many_iff_tracked(g, pairs, iff2());
  auto sums = host_class_sums(gg, k);
  const Rational half = (1 - k) / 2;
  for_each_permutation(3, [&](const std::vector<int>& p0) {
    std::vector<int> pat{p0[0] + 1, p0[1] + 1, p0[2] + 1};
    int d = 0;
    bool mismatch = false;
    for (const auto& [e, ep] : pairs) {
      const bool a = pat[e.u - 1] == e.v, b = pat[ep.u - 1] == ep.v;
      if (a != b) mismatch = true;
      if (!a && !b) ++d;
    }
    const Rational want = mismatch ? Rational(0) : pow(half, d) * term(g, pat, k);
    EXPECT_EQ(sums[pat], want) << pat[0] << pat[1] << pat[2];
  });
}

// Replication identity, grouping classes of F^l by their restriction to copy 1.
void check_replication(const WeightedDigraph& g, int l, const Rational& k) {
  const GadgetWiring& w = certified_iff_wiring(k);
  GadgetedGraph gg = replicate_tracked(g, l, w);
  const int n = g.vertex_count();
  const int m = g.edge_count();
  ASSERT_EQ(gg.graph.vertex_count(), l * n + 3 * (l - 1) * m);
  auto sums = host_class_sums(gg, k);
  std::map<std::vector<int>, Rational> by_copy1;
  for (const auto& [key, v] : sums) by_copy1[std::vector<int>(key.begin(), key.begin() + n)] += v;
  const Rational alpha = pow((1 - k) / 2, static_cast<long>(m - n) * (l - 1));
  for_each_permutation(n, [&](const std::vector<int>& p0) {
    std::vector<int> pat(n);
    bool cover = true;
    for (int x = 0; x < n; ++x) {
      pat[x] = p0[x] + 1;
      cover = cover && g.has_edge(x + 1, pat[x]);
    }
    Rational want(0);
    if (cover) {
      std::vector<int> img0(p0);
      want = alpha * pow(-k, static_cast<long>(l) * cycle_count_raw(img0));
      for (int x = 0; x < n; ++x) want *= g.weight(x + 1, pat[x]);
    }
    EXPECT_EQ(by_copy1[pat], want);
  });
}

TEST(Replicate, OneCopyUnchanged) {
  Rng rng(3);
  WeightedDigraph g = random_graph(3, rng, 0.7);
  EXPECT_EQ(replicate(g, 1, iff2()), g);
  EXPECT_THROW(replicate(g, 0, iff2()), InvalidArgument);
}

TEST(Replicate, TwoCopies) {
  Rng rng(4);
  for (int n = 2; n <= 3; ++n) check_replication(random_graph(n, rng), 2, 2);
  check_replication(random_graph(3, rng, 0.6), 2, 3);
}

TEST(Replicate, ThreeCopiesTwoVertices) {
  Rng rng(6);
  check_replication(random_graph(2, rng), 3, 2);
}

TEST(Replicate, VertexCount) {
  Rng rng(8);
  for (int t = 0; t < 5; ++t) {
    WeightedDigraph g = random_graph(4, rng, 0.5);
    for (int l = 1; l <= 4; ++l)
      EXPECT_EQ(replicate(g, l, iff2()).vertex_count(), l * 4 + 3 * (l - 1) * g.edge_count());
  }
}

TEST(SmallGadgets, LoopAndDiamond) {
  const GadgetCertificate& lc = loop_gadget(2);
  EXPECT_TRUE(lc.passed());
  EXPECT_EQ(lc.wiring.arcs.size(), 3u);
  EXPECT_EQ(lc.contract.at("through").cycle_delta, 1);
  EXPECT_EQ(lc.contract.at("skip").cycle_delta, 1);
  const GadgetCertificate& dc = diamond_gadget(2);
  EXPECT_TRUE(dc.passed());
  EXPECT_EQ(dc.wiring.internal_count, 4);
  EXPECT_EQ(dc.contract.at("through").factor, 2 * dc.contract.at("skip").factor);
  for (int k : {-3, -1, 3}) {
    EXPECT_TRUE(loop_gadget(k).passed());
    EXPECT_TRUE(diamond_gadget(k).passed());
  }
}

TEST(SmallGadgets, LoopOnIsolatedVertex) {
  WeightedDigraph g(1);
  place_gadget(g, loop_gadget(3).wiring, {1});
  EXPECT_EQ(fermionant_by_covers(g, 3, 9), -3);
}

TEST(SmallGadgets, DiamondOnTwoVertices) {
  const Rational k(3);
  WeightedDigraph host(2);
  host.add_edge(1, 2, 2);
  host.add_edge(2, 1, Rational(5, 3));
  host.add_edge(1, 1, -1);
  host.add_edge(2, 2, 4);
  WeightedDigraph g = host;
  g.remove_edge(1, 2);
  place_gadget(g, diamond_gadget(k).wiring, {1, 2});
  EXPECT_EQ(fermionant_by_covers(g, k, 9), pow(-k, 2) * fermionant_by_covers(host, k, 9));
}

TEST(EliminateWeights, ZeroOneUnchanged) {
  WeightedDigraph g(3);
  g.add_edge(1, 2, 1);
  g.add_edge(2, 3, 1);
  g.add_edge(3, 1, 1);
  WeightElimination r = eliminate_weights(g, 2, mpz_class(10));
  EXPECT_EQ(r.graph, g);
  EXPECT_EQ(r.gamma, 0);
}

TEST(EliminateWeights, WeightTwoOnTwoCycle) {
  for (int k : {2, 3, -2}) {
    WeightedDigraph g(2);
    g.add_edge(1, 2, 2);
    g.add_edge(2, 1, 1);
    WeightElimination r = eliminate_weights(g, k, mpz_class(100));
    EXPECT_EQ(r.gamma, 2);
    EXPECT_EQ(r.census_gamma, r.gamma);
    EXPECT_EQ(fermionant_by_covers(r.graph, k, 12), pow(Rational(-k), r.gamma) * fermionant_by_covers(g, k, 9));
  }
}

TEST(EliminateWeights, TwentyHasBitsTwoAndFour) {
  WeightedDigraph g(2);
  g.add_edge(1, 2, 20);
  WeightElimination r = eliminate_weights(g, 2, mpz_class(1000));
  // bit 2: 1 chain vertex + 2 diamonds; bit 4: 3 chain vertices + 4 diamonds;
  // each chain vertex brings its loop-gadget vertex.
  EXPECT_EQ(r.gamma, (3 * 2 - 1) + (3 * 4 - 1));
  EXPECT_EQ(loop_gadget_count(20), r.gamma);
  EXPECT_EQ(r.census_gamma, r.gamma);
  EXPECT_EQ(r.graph.vertex_count(), 2 + (2 * 1 + 2 * 4) + (2 * 3 + 4 * 4));
  EXPECT_FALSE(r.graph.has_edge(1, 2));
}

TEST(EliminateWeights, RandomGraphsPreserveFermionant) {
  Rng rng(12);
  for (int t = 0; t < 12; ++t) {
    const int n = static_cast<int>(rng.uniform(1, 3));
    const Rational k(static_cast<long>(rng.coin() ? rng.uniform(2, 3) : -rng.uniform(1, 3)));
    WeightedDigraph g(n);
    for (int u = 1; u <= n; ++u)
      for (int v = 1; v <= n; ++v)
        if (rng.coin()) g.add_edge(u, v, rng.uniform(0, 6));
    WeightElimination r = eliminate_weights(g, k, mpz_class(7));
    for (const auto& [e, w] : r.graph.edge_map()) EXPECT_TRUE(w == 0 || w == 1);
    EXPECT_EQ(r.census_gamma, r.gamma);
    std::vector<int> kept(n);
    for (int i = 0; i < n; ++i) kept[i] = i + 1;
    EXPECT_EQ(evaluate_fermionant(r.graph, k, kept), pow(-k, r.gamma) * fermionant_dp(g, k)) << t;
  }
}

TEST(EliminateWeights, Preconditions) {
  WeightedDigraph g(1);
  g.add_edge(1, 1, -1);
  EXPECT_THROW(eliminate_weights(g, 2, mpz_class(5)), InvalidArgument);
  g.set_weight(1, 1, 5);
  EXPECT_THROW(eliminate_weights(g, 2, mpz_class(5)), InvalidArgument);
  g.set_weight(1, 1, Rational(1, 2));
  EXPECT_THROW(eliminate_weights(g, 2, mpz_class(5)), InvalidArgument);
  g.set_weight(1, 1, 3);
  EXPECT_THROW(eliminate_weights(g, 1, mpz_class(5)), InvalidArgument);
  EXPECT_THROW(eliminate_weights(g, Rational(1, 2), mpz_class(5)), InvalidArgument);
}

TEST(Certificate, JsonRoundTrip) {
  CertifyOptions opt;
  opt.weightings = 1;
  opt.max_host = 2;
  const GadgetCertificate cert = certify_iff(iff2(), opt);
  const std::string text = certificate_to_json(cert);
  const GadgetWiring back = wiring_from_json(text);
  EXPECT_EQ(back.kind, "iff");
  EXPECT_EQ(back.k, 2);
  EXPECT_EQ(back.internal_weights(), iff2().internal_weights());
  EXPECT_EQ(back.attach_e, iff2().attach_e);
  EXPECT_EQ(back.attach_e_prime, iff2().attach_e_prime);
  Rng rng(1);
  WeightedDigraph g = random_graph(3, rng);
  EXPECT_EQ((insert_iff(g, {1, 2}, {3, 1}, back)), (insert_iff(g, {1, 2}, {3, 1}, iff2())));

  const GadgetWiring d = wiring_from_json(certificate_to_json(diamond_gadget(2)));
  EXPECT_EQ(d.internal_count, 4);
  EXPECT_EQ(d.arcs.size(), diamond_gadget(2).wiring.arcs.size());
  EXPECT_THROW(wiring_from_json("{"), FormatError);
  EXPECT_THROW(wiring_from_json("{\"format\":\"x\"}"), FormatError);
}

}  // namespace
}  // namespace ferm
