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

#ifndef FERM_GADGETS_HPP_
#define FERM_GADGETS_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ferm/digraph.hpp"
#include "ferm/matrix.hpp"
#include "ferm/rational.hpp"

namespace ferm {

// ---------------------------------------------------------------------------
// Wirings

// Endpoint of a gadget arc: an internal vertex (0-based) or a terminal, i.e.
// a host vertex named by the gadget's terminal list.
struct GadgetEnd {
  bool internal = true;
  int index = 0;
  static GadgetEnd in(int i) { return {true, i}; }
  static GadgetEnd term(int t) { return {false, t}; }
};

struct GadgetArc {
  GadgetEnd from;
  GadgetEnd to;
  Rational weight{1};
  // Index of the host edge whose weight multiplies this arc (0 for e, 1 for
  // e'), or -1. Such an arc is the carrier of that host edge after insertion.
  int carries = -1;
};

// Rule turning the printed iff matrix into the matrix actually used.
struct MatrixVariant {
  bool transpose = false;
  unsigned sign_mask = 0;  // bit 3*i+j flips entry (i, j)
  int sub_row = -1;        // single-entry substitution, 0-based
  int sub_col = -1;
  int sub_code = -1;       // index into substitution_values(k)

  std::string describe() const;
  RationalMatrix apply(const Rational& k) const;
};

// {1, -1, 1/k, -1/k, 1/2, -1/2, 1/(2k), -1/(2k)}.
std::vector<Rational> substitution_values(const Rational& k);
// [[1/k, 1, 1/2], [1, -1/k, -1/2], [1, 1, 1/(2k)]], internal(i, j) = weight of p_i -> p_j.
RationalMatrix printed_iff_matrix(const Rational& k);

// How one host edge is rerouted: enters internal vertex `entry` (the arc
// carries the edge weight) and leaves from every vertex in `exits` with unit
// weight.
struct Attachment {
  int entry = 0;
  std::vector<int> exits;
  friend bool operator==(const Attachment& a, const Attachment& b) {
    return a.entry == b.entry && a.exits == b.exits;
  }
};

struct GadgetWiring {
  std::string kind;  // "iff", "loop" or "diamond"
  Rational k;
  int internal_count = 0;
  std::vector<std::string> terminals;
  std::vector<GadgetArc> arcs;
  // iff only.
  MatrixVariant variant;
  Attachment attach_e;
  Attachment attach_e_prime;

  RationalMatrix internal_weights() const;
};

GadgetWiring make_iff_wiring(const Rational& k, const MatrixVariant& variant, const Attachment& e,
                             const Attachment& e_prime);

// ---------------------------------------------------------------------------
// Contracts and certificates

struct ContractCase {
  std::string name;
  Rational factor;
  int cycle_delta = 0;
};

struct GadgetContract {
  std::string kind;
  Rational k;
  std::vector<ContractCase> cases;
  const ContractCase& at(const std::string& name) const;
};

// both -> 1, only_e -> 0, only_e_prime -> 0, neither -> (1-k)/2; no cycle change.
GadgetContract iff_contract(const Rational& k);

struct TestbedRow {
  std::string testbed;
  std::string cover;  // host successor list, or the pattern for non-covers
  std::string case_name;
  Rational expected;
  Rational observed;
};

struct GadgetCertificate {
  GadgetWiring wiring;
  GadgetContract contract;
  std::vector<TestbedRow> rows;  // representative rows, see certify_iff
  long classes_checked = 0;
  long failures = 0;
  std::vector<Rational> k_samples;
  bool passed() const { return failures == 0; }
};

// Sums over internal configurations of an iff gadget with distinct
// terminals, grouped by which terminal pairs are joined by a path.
struct IffTransfer {
  Rational neither, only_e, only_e_prime, both, e_to_v_prime, e_prime_to_v, crossed;
  // Number of the seven values that match the contract.
  int matches(const Rational& k) const;
};

IffTransfer iff_transfer(const GadgetWiring& wiring);

struct CertifyOptions {
  std::uint64_t seed = 1;
  int weightings = 20;
  int max_host = 3;
  std::vector<Rational> k_samples = {Rational(2), Rational(3), Rational(-2), Rational(1) / Rational(2)};
  // Rows kept in the certificate: every class of the first weighting at the
  // wiring's own k.
  bool keep_rows = true;
  bool stop_at_first_failure = false;
};

// Checks the iff contract for every ordered pair of distinct edges of the
// complete looped digraphs on 2..max_host vertices, each weighting drawn at
// random, at the wiring's k and at every k sample (the wiring is rebuilt from
// its variant and attachments at each sample).
GadgetCertificate certify_iff(const GadgetWiring& wiring, const CertifyOptions& options = {});

struct SearchLog {
  long candidates = 0;
  long transfer_passes = 0;
  std::string stage;
};

// Searches matrix variants in order verbatim, transpose, sign flips,
// single-entry substitutions; within each, attachments ordered by connector
// count. Returns the first wiring whose certification passes. Throws
// CertificationFailure with the best partial candidate otherwise.
GadgetWiring search_iff_wiring(const Rational& k, SearchLog* log = nullptr,
                               const CertifyOptions& options = {});

// search_iff_wiring memoized per k (thread-safe).
const GadgetWiring& certified_iff_wiring(const Rational& k);

// ---------------------------------------------------------------------------
// Insertion

// A graph built from a host by gadget insertion. Vertices 1..host_vertices are
// host vertices; host edges keep an identity through their carrier arcs.
struct GadgetedGraph {
  WeightedDigraph graph;
  int host_vertices = 0;
  std::map<Edge, Edge> carrier;  // host edge -> arc now carrying its weight
  std::vector<Edge> host_edges;

  static GadgetedGraph wrap(const WeightedDigraph& g);
  // Arc currently standing for host edge e. Throws InvalidArgument if e is not
  // a host edge.
  Edge resolve(const Edge& e) const;
  std::vector<int> kept() const;
  // Host successor of each host vertex for a cover given by 1-based graph
  // successors (first hops); 0 where the first hop is not a host edge.
  std::vector<int> host_pattern(const std::vector<int>& first_hop) const;
};

// Places one iff gadget between host edges e and e_prime. Raises
// InvalidArgument if either is absent or they coincide.
void place_iff(GadgetedGraph& gg, const Edge& e, const Edge& e_prime, const GadgetWiring& wiring);

WeightedDigraph insert_iff(const WeightedDigraph& g, const Edge& e, const Edge& e_prime,
                           const GadgetWiring& wiring);
GadgetedGraph insert_many_iff_tracked(const WeightedDigraph& g, const std::vector<std::pair<Edge, Edge>>& pairs,
                                      const GadgetWiring& wiring);
WeightedDigraph insert_many_iff(const WeightedDigraph& g, const std::vector<std::pair<Edge, Edge>>& pairs,
                                const GadgetWiring& wiring);

// F^l: copy i occupies vertices (i-1)n+1..in; copy 1 keeps the weights, later
// copies carry unit weights on the edges present in g; for every edge e and
// i < l an iff gadget joins e_i (role e) and e_{i+1} (role e').
GadgetedGraph replicate_tracked(const WeightedDigraph& g, int l, const GadgetWiring& wiring);
WeightedDigraph replicate(const WeightedDigraph& g, int l, const GadgetWiring& wiring);

// Sums of the plain fermionant over covers of gg.graph grouped by host
// pattern (1-based host successors). Uses exhaustive cover enumeration when
// the graph has at most `brute_limit` vertices, the cluster evaluator
// otherwise.
std::map<std::vector<int>, Rational> host_class_sums(const GadgetedGraph& gg, const Rational& k,
                                                     int brute_limit = 12);

// ---------------------------------------------------------------------------
// Weight elimination

// Makes terminal p optional: covers routing a path through p and covers
// leaving p out both pick up (-k)^delta. Found by search over unit-weight arc
// subsets on {p, q} and certified by enumeration. Memoized per k.
const GadgetCertificate& loop_gadget(const Rational& k);
// 0/1 stand-in for a weight-2 arc x -> y: two through-routes x -> d_i -> y,
// the middles made optional by loop gadgets. Cases "through" (factor
// 2(-k)^delta) and "skip" (factor (-k)^delta). Memoized per k.
const GadgetCertificate& diamond_gadget(const Rational& k);

// Adds the gadget's internal vertices to g and wires them to the given host
// vertices (one per terminal). Returns the id of the first internal vertex.
int place_gadget(WeightedDigraph& g, const GadgetWiring& wiring, const std::vector<int>& terminals);

struct WeightElimination {
  WeightedDigraph graph;
  long gamma = 0;           // from the per-bit formula and certified deltas
  long census_gamma = 0;    // recounted from the output graph
  int host_vertices = 0;
  std::map<Edge, long> per_edge_gamma;
};

// Loop gadgets used by M(a): one per intermediate chain vertex and two per
// diamond, summed over the set bits b >= 1 of a.
long loop_gadget_count(const mpz_class& a);

// Replaces every edge of integer weight a >= 2 by the binary-expansion gadget
// M(a). Preconditions: weights are integers in [0, lambda); k integer not in
// {0, 1}. Plain fermionant of the output = (-k)^gamma * plain fermionant of g.
WeightElimination eliminate_weights(const WeightedDigraph& g, const Rational& k, const mpz_class& lambda);

// ---------------------------------------------------------------------------
// Serialization

std::string certificate_to_json(const GadgetCertificate& cert);
GadgetWiring wiring_from_json(const std::string& text);

}  // namespace ferm

#endif  // FERM_GADGETS_HPP_
