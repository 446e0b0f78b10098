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

#include "ferm/gadgets.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ferm/cluster.hpp"
#include "ferm/cycle_covers.hpp"
#include "ferm/errors.hpp"
#include "ferm/permutation.hpp"
#include "ferm/random.hpp"

namespace ferm {

namespace {

const char* const kSubLabels[] = {"1", "-1", "1/k", "-1/k", "1/2", "-1/2", "1/(2k)", "-1/(2k)"};

Rational power(const Rational& base, long e) { return pow(base, e); }

std::string pattern_str(const std::vector<int>& p) {
  std::string s = "[";
  for (size_t i = 0; i < p.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(p[i]);
  }
  return s + "]";
}

// Sum of plain-fermionant terms of g grouped by host pattern. `hop(x, s)`
// maps a host vertex x and its 1-based successor s to a pattern entry; a
// return of -1 marks an invalid pattern (kept, so callers can demand zero).
std::map<std::vector<int>, Rational> class_sums_brute(const WeightedDigraph& g, int host_n, const Rational& k,
                                                      int limit, const std::function<int(int, int)>& hop) {
  const int n = g.vertex_count();
  std::vector<Rational> powers(n + 1);
  powers[0] = 1;
  for (int i = 1; i <= n; ++i) powers[i] = powers[i - 1] * (-k);
  std::map<std::vector<int>, Rational> sums;
  std::vector<int> key(host_n);
  for_each_cycle_cover(g, limit, [&](const std::vector<int>& succ) {
    Rational w(1);
    for (int i = 0; i < n; ++i) w *= g.weight(i + 1, succ[i] + 1);
    for (int x = 0; x < host_n; ++x) key[x] = hop(x + 1, succ[x] + 1);
    sums[key] += powers[cycle_count_raw(succ)] * w;
  });
  return sums;
}

// Records expected-vs-observed over the union of both key sets.
struct Checker {
  GadgetCertificate* cert;
  bool keep;
  std::string testbed;

  void compare(const std::map<std::vector<int>, Rational>& expected,
               const std::map<std::vector<int>, Rational>& observed,
               const std::function<std::string(const std::vector<int>&)>& case_of) {
    std::set<std::vector<int>> keys;
    for (const auto& [key, v] : expected) keys.insert(key);
    for (const auto& [key, v] : observed) keys.insert(key);
    for (const auto& key : keys) {
      auto e = expected.find(key);
      auto o = observed.find(key);
      const Rational want = e == expected.end() ? Rational(0) : e->second;
      const Rational got = o == observed.end() ? Rational(0) : o->second;
      ++cert->classes_checked;
      if (want != got) ++cert->failures;
      if (keep || want != got)
        if (cert->rows.size() < 4000) cert->rows.push_back({testbed, pattern_str(key), case_of(key), want, got});
    }
  }
};

std::vector<Rational> k_list(const Rational& own, const std::vector<Rational>& samples) {
  std::vector<Rational> ks{own};
  for (const Rational& s : samples)
    if (std::find(ks.begin(), ks.end(), s) == ks.end()) ks.push_back(s);
  return ks;
}

WeightedDigraph random_complete(int n, Rng& rng, bool loops) {
  WeightedDigraph g(n);
  for (int u = 1; u <= n; ++u)
    for (int v = 1; v <= n; ++v)
      if (u != v || loops) g.add_edge(u, v, rng.nonzero_rational());
  return g;
}

// Cover weight and cycle count of a (possibly partial) host successor list;
// entries equal to 0 are vertices left out.
Rational pattern_term(const WeightedDigraph& g, const std::vector<int>& pat, const Rational& k) {
  Rational w(1);
  std::vector<int> img0;
  std::vector<int> index(pat.size() + 1, -1);
  for (size_t x = 0; x < pat.size(); ++x)
    if (pat[x] != 0) {
      index[x + 1] = static_cast<int>(img0.size());
      img0.push_back(0);
      w *= g.weight(static_cast<int>(x) + 1, pat[x]);
    }
  for (size_t x = 0; x < pat.size(); ++x)
    if (pat[x] != 0) img0[index[x + 1]] = index[pat[x]];
  return w * power(-k, cycle_count_raw(img0));
}

// ---- iff transfer, structural form ----

struct IffConfig {
  int pattern;  // bitmask: 1 e->v, 2 e'->v', 4 e->v', 8 e'->v
  int cycles;
  std::vector<std::pair<int, int>> arcs;  // internal arcs used
};

std::vector<IffConfig> iff_configs(const Attachment& ae, const Attachment& ap) {
  auto in_exits = [](const Attachment& a, int i) {
    return std::find(a.exits.begin(), a.exits.end(), i) != a.exits.end();
  };
  std::vector<IffConfig> out;
  std::vector<int> succ(3);
  std::vector<char> hit(3, 0);
  char exit_used[2] = {0, 0};
  auto leaf = [&]() {
    std::vector<int> entries;
    for (int i = 0; i < 3; ++i)
      if (!hit[i]) entries.push_back(i);
    std::vector<char> on_path(3, 0);
    std::vector<int> exit_of(entries.size());
    for (size_t t = 0; t < entries.size(); ++t) {
      int cur = entries[t];
      for (;;) {
        on_path[cur] = 1;
        if (succ[cur] < 0) break;
        cur = succ[cur];
      }
      exit_of[t] = succ[cur];  // -1 v, -2 v'
    }
    int cycles = 0;
    std::vector<char> seen(on_path);
    for (int i = 0; i < 3; ++i) {
      if (seen[i]) continue;
      ++cycles;
      for (int j = i; !seen[j]; j = succ[j]) seen[j] = 1;
    }
    std::vector<std::pair<int, int>> arcs;
    for (int i = 0; i < 3; ++i)
      if (succ[i] >= 0) arcs.push_back({i, succ[i]});
    // Sources: role 0 (u) enters at ae.entry, role 1 (u') at ap.entry.
    auto assign = [&](auto&& self, size_t idx, int used, int pattern) -> void {
      if (idx == entries.size()) {
        out.push_back({pattern, cycles, arcs});
        return;
      }
      for (int role = 0; role < 2; ++role) {
        if (used >> role & 1) continue;
        const int entry = role == 0 ? ae.entry : ap.entry;
        if (entry != entries[idx]) continue;
        const bool to_v = exit_of[idx] == -1;
        const int bit = role == 0 ? (to_v ? 1 : 4) : (to_v ? 8 : 2);
        self(self, idx + 1, used | 1 << role, pattern | bit);
      }
    };
    assign(assign, 0, 0, 0);
  };
  auto rec = [&](auto&& self, int i) -> void {
    if (i == 3) {
      leaf();
      return;
    }
    for (int j = 0; j < 3; ++j) {
      if (hit[j]) continue;
      hit[j] = 1;
      succ[i] = j;
      self(self, i + 1);
      hit[j] = 0;
    }
    // v and v' each take at most one predecessor.
    for (int x = 0; x < 2; ++x) {
      if (exit_used[x] || !in_exits(x == 0 ? ae : ap, i)) continue;
      exit_used[x] = 1;
      succ[i] = -1 - x;
      self(self, i + 1);
      exit_used[x] = 0;
    }
  };
  rec(rec, 0);
  return out;
}

Rational* transfer_slot(IffTransfer& t, int pattern) {
  switch (pattern) {
    case 0: return &t.neither;
    case 1: return &t.only_e;
    case 2: return &t.only_e_prime;
    case 3: return &t.both;
    case 4: return &t.e_to_v_prime;
    case 8: return &t.e_prime_to_v;
    case 12: return &t.crossed;
    default: return nullptr;
  }
}

IffTransfer transfer_from_configs(const std::vector<IffConfig>& configs, const RationalMatrix& m,
                                  const Rational& k) {
  IffTransfer t;
  const Rational mk = -k;
  for (const IffConfig& c : configs) {
    Rational w(1);
    for (const auto& [i, j] : c.arcs) {
      w *= m(i, j);
      if (w.is_zero()) break;
    }
    if (w.is_zero()) continue;
    for (int r = 0; r < c.cycles; ++r) w *= mk;
    *transfer_slot(t, c.pattern) += w;
  }
  return t;
}

std::vector<std::pair<Attachment, Attachment>> iff_attachments() {
  std::vector<Attachment> roles;
  for (int entry = 0; entry < 3; ++entry)
    for (int mask = 1; mask < 8; ++mask) {
      Attachment a{entry, {}};
      for (int i = 0; i < 3; ++i)
        if (mask >> i & 1) a.exits.push_back(i);
      roles.push_back(a);
    }
  std::vector<std::pair<Attachment, Attachment>> all;
  for (const auto& a : roles)
    for (const auto& b : roles) all.push_back({a, b});
  auto key = [](const std::pair<Attachment, Attachment>& p) {
    return std::make_tuple(p.first.exits.size() + p.second.exits.size(), p.first.entry, p.first.exits,
                           p.second.entry, p.second.exits);
  };
  std::stable_sort(all.begin(), all.end(), [&](const auto& a, const auto& b) { return key(a) < key(b); });
  return all;
}

std::vector<MatrixVariant> iff_variants() {
  std::vector<MatrixVariant> out;
  out.push_back({});
  out.push_back({true, 0, -1, -1, -1});
  for (unsigned mask = 1; mask < 512; ++mask) out.push_back({false, mask, -1, -1, -1});
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c)
      for (int code = 0; code < 8; ++code) out.push_back({false, 0, r, c, code});
  return out;
}

std::string end_name(const GadgetWiring& w, const GadgetEnd& e) {
  return e.internal ? "p" + std::to_string(e.index + 1) : w.terminals.at(e.index);
}

GadgetEnd parse_end(const GadgetWiring& w, const std::string& name) {
  for (size_t t = 0; t < w.terminals.size(); ++t)
    if (w.terminals[t] == name) return GadgetEnd::term(static_cast<int>(t));
  if (name.size() > 1 && name[0] == 'p') {
    const int i = std::stoi(name.substr(1)) - 1;
    if (i >= 0 && i < w.internal_count) return GadgetEnd::in(i);
  }
  throw FormatError("unknown gadget endpoint: " + name);
}

}  // namespace

// ---------------------------------------------------------------------------

std::vector<Rational> substitution_values(const Rational& k) {
  const Rational ik = Rational(1) / k, half = Rational(1, 2), ihk = Rational(1) / (Rational(2) * k);
  return {Rational(1), Rational(-1), ik, -ik, half, -half, ihk, -ihk};
}

RationalMatrix printed_iff_matrix(const Rational& k) {
  if (k.is_zero()) throw InvalidArgument("iff gadget needs k != 0");
  RationalMatrix m(3, 3);
  const Rational ik = Rational(1) / k;
  m << ik, 1, Rational(1, 2), 1, -ik, Rational(-1, 2), 1, 1, Rational(1) / (Rational(2) * k);
  return m;
}

std::string MatrixVariant::describe() const {
  std::string s;
  if (transpose) s = "transpose";
  if (sign_mask) {
    std::ostringstream os;
    os << "signs:0x" << std::hex << sign_mask;
    s += (s.empty() ? "" : "+") + os.str();
  }
  if (sub_code >= 0)
    s += (s.empty() ? "" : "+") + std::string("substitution(") + std::to_string(sub_row + 1) + "," +
         std::to_string(sub_col + 1) + ")=" + kSubLabels[sub_code];
  return s.empty() ? "verbatim" : s;
}

RationalMatrix MatrixVariant::apply(const Rational& k) const {
  RationalMatrix m = printed_iff_matrix(k);
  if (transpose) m.transposeInPlace();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (sign_mask >> (3 * i + j) & 1) m(i, j) = -m(i, j);
  if (sub_code >= 0) m(sub_row, sub_col) = substitution_values(k).at(sub_code);
  return m;
}

RationalMatrix GadgetWiring::internal_weights() const {
  RationalMatrix m = RationalMatrix::Zero(internal_count, internal_count);
  for (const GadgetArc& a : arcs)
    if (a.from.internal && a.to.internal) m(a.from.index, a.to.index) = a.weight;
  return m;
}

GadgetWiring make_iff_wiring(const Rational& k, const MatrixVariant& variant, const Attachment& e,
                             const Attachment& e_prime) {
  GadgetWiring w;
  w.kind = "iff";
  w.k = k;
  w.internal_count = 3;
  w.terminals = {"u", "v", "u'", "v'"};
  w.variant = variant;
  w.attach_e = e;
  w.attach_e_prime = e_prime;
  const RationalMatrix m = variant.apply(k);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (!m(i, j).is_zero()) w.arcs.push_back({GadgetEnd::in(i), GadgetEnd::in(j), m(i, j), -1});
  const Attachment* roles[2] = {&e, &e_prime};
  for (int r = 0; r < 2; ++r) {
    w.arcs.push_back({GadgetEnd::term(2 * r), GadgetEnd::in(roles[r]->entry), Rational(1), r});
    for (int x : roles[r]->exits) w.arcs.push_back({GadgetEnd::in(x), GadgetEnd::term(2 * r + 1), Rational(1), -1});
  }
  return w;
}

const ContractCase& GadgetContract::at(const std::string& name) const {
  for (const auto& c : cases)
    if (c.name == name) return c;
  throw InvalidArgument("no contract case " + name);
}

GadgetContract iff_contract(const Rational& k) {
  return {"iff", k, {{"both", 1, 0}, {"only_e", 0, 0}, {"only_e_prime", 0, 0}, {"neither", (1 - k) / 2, 0}}};
}

int IffTransfer::matches(const Rational& k) const {
  return (neither == (1 - k) / 2) + only_e.is_zero() + only_e_prime.is_zero() + (both == 1) +
         e_to_v_prime.is_zero() + e_prime_to_v.is_zero() + crossed.is_zero();
}

IffTransfer iff_transfer(const GadgetWiring& wiring) {
  // Terminals 1..4 with unit host weights, internals 5..
  WeightedDigraph g(4 + wiring.internal_count);
  auto id = [](const GadgetEnd& e) { return e.internal ? 5 + e.index : 1 + e.index; };
  for (const GadgetArc& a : wiring.arcs) g.add_edge(id(a.from), id(a.to), a.weight);
  std::vector<int> internal;
  for (int i = 0; i < wiring.internal_count; ++i) internal.push_back(5 + i);
  IffTransfer t;
  for (const auto& [key, w] : cluster_table(g, {1, 2, 3, 4}, internal, wiring.k)) {
    // Keys with two passages into the same terminal never extend to a cover.
    if (key.size() == 2 && key[0].to == key[1].to) continue;
    int pattern = 0;
    for (const Passage& p : key) {
      const bool from_e = p.from == 1, to_v = p.to == 2;
      if (p.from != 1 && p.from != 3) throw InvalidArgument("iff passage from a non-source terminal");
      if (p.to != 2 && p.to != 4) throw InvalidArgument("iff passage to a non-target terminal");
      pattern |= from_e ? (to_v ? 1 : 4) : (to_v ? 8 : 2);
    }
    Rational* slot = transfer_slot(t, pattern);
    if (!slot) throw InvalidArgument("unexpected iff passage pattern");
    *slot += w;
  }
  return t;
}

GadgetCertificate certify_iff(const GadgetWiring& wiring, const CertifyOptions& options) {
  if (wiring.kind != "iff") throw InvalidArgument("certify_iff needs an iff wiring");
  GadgetCertificate cert;
  cert.wiring = wiring;
  cert.contract = iff_contract(wiring.k);
  cert.k_samples = k_list(wiring.k, options.k_samples);
  Rng rng(options.seed);
  for (const Rational& k : cert.k_samples) {
    const GadgetWiring wk = k == wiring.k ? wiring : make_iff_wiring(k, wiring.variant, wiring.attach_e,
                                                                        wiring.attach_e_prime);
    const GadgetContract contract = iff_contract(k);
    for (int n = 2; n <= options.max_host; ++n) {
      const std::vector<Edge> edges = complete_looped_digraph(n).edges();
      for (const Edge& e : edges)
        for (const Edge& ep : edges) {
          if (e == ep) continue;
          for (int t = 0; t < options.weightings; ++t) {
            const WeightedDigraph host = random_complete(n, rng, true);
            Checker check{&cert, options.keep_rows && k == wiring.k && t == 0,
                          "K" + std::to_string(n) + " e=" + e.str() + " e'=" + ep.str() + " k=" + k.str() +
                              " w#" + std::to_string(t)};
            GadgetedGraph gg;
            try {
              gg = insert_many_iff_tracked(host, {{e, ep}}, wk);
            } catch (const InvalidArgument&) {
              ++cert.failures;
              if (options.stop_at_first_failure) return cert;
              continue;
            }
            const auto observed = host_class_sums(gg, k, 12);
            std::map<std::vector<int>, Rational> expected;
            for_each_permutation(n, [&](const std::vector<int>& p0) {
              std::vector<int> pat(n);
              for (int x = 0; x < n; ++x) pat[x] = p0[x] + 1;
              const bool in_e = pat[e.u - 1] == e.v, in_ep = pat[ep.u - 1] == ep.v;
              const char* name = in_e ? (in_ep ? "both" : "only_e") : (in_ep ? "only_e_prime" : "neither");
              const Rational f = contract.at(name).factor;
              if (!f.is_zero()) expected[pat] = f * pattern_term(host, pat, k);
            });
            check.compare(expected, observed, [&](const std::vector<int>& pat) -> std::string {
              for (int x = 0; x < n; ++x)
                if (pat[x] <= 0) return "non-cover";
              const bool in_e = pat[e.u - 1] == e.v, in_ep = pat[ep.u - 1] == ep.v;
              return in_e ? (in_ep ? "both" : "only_e") : (in_ep ? "only_e_prime" : "neither");
            });
            if (options.stop_at_first_failure && cert.failures) return cert;
          }
        }
    }
  }
  return cert;
}

GadgetWiring search_iff_wiring(const Rational& k, SearchLog* log, const CertifyOptions& options) {
  if (k.is_zero()) throw InvalidArgument("search_iff_wiring: k must be nonzero");
  const auto attachments = iff_attachments();
  std::vector<std::vector<IffConfig>> configs;
  configs.reserve(attachments.size());
  for (const auto& [a, b] : attachments) configs.push_back(iff_configs(a, b));

  CertifyOptions quick = options;
  quick.weightings = 2;
  quick.keep_rows = false;
  quick.stop_at_first_failure = true;

  int best_matches = -1;
  std::string best;
  // A substitution is a no-op when it reproduces the printed entry as a
  // function of k; compare at a generic k so that coincidences at special k
  // (e.g. -1/k == 1 at k = -1) do not drop the variant.
  const Rational generic(7);
  const RationalMatrix printed = printed_iff_matrix(generic);
  for (const MatrixVariant& variant : iff_variants()) {
    if (variant.sub_code >= 0 &&
        substitution_values(generic)[variant.sub_code] == printed(variant.sub_row, variant.sub_col))
      continue;
    const RationalMatrix m = variant.apply(k);
    for (size_t c = 0; c < attachments.size(); ++c) {
      if (log) ++log->candidates;
      const IffTransfer t = transfer_from_configs(configs[c], m, k);
      const int matches = t.matches(k);
      if (matches > best_matches) {
        best_matches = matches;
        best = variant.describe() + " with e entry p" + std::to_string(attachments[c].first.entry + 1) +
               ", e' entry p" + std::to_string(attachments[c].second.entry + 1);
      }
      if (matches < 7) continue;
      if (log) ++log->transfer_passes;
      GadgetWiring w = make_iff_wiring(k, variant, attachments[c].first, attachments[c].second);
      if (!certify_iff(w, quick).passed()) continue;
      CertifyOptions full = options;
      full.keep_rows = false;
      full.stop_at_first_failure = true;
      if (!certify_iff(w, full).passed()) continue;
      if (log) log->stage = variant.describe();
      return w;
    }
  }
  throw CertificationFailure("no certified iff wiring for k=" + k.str() + "; best partial candidate: " + best +
                             " (" + std::to_string(best_matches) + "/7 transfer values match)");
}

const GadgetWiring& certified_iff_wiring(const Rational& k) {
  static std::mutex mu;
  static std::map<Rational, GadgetWiring> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(k);
  if (it == cache.end()) it = cache.emplace(k, search_iff_wiring(k)).first;
  return it->second;
}

// ---------------------------------------------------------------------------
// Insertion

GadgetedGraph GadgetedGraph::wrap(const WeightedDigraph& g) {
  GadgetedGraph gg;
  gg.graph = g;
  gg.host_vertices = g.vertex_count();
  gg.host_edges = g.edges();
  for (const Edge& e : gg.host_edges) gg.carrier[e] = e;
  return gg;
}

Edge GadgetedGraph::resolve(const Edge& e) const {
  auto it = carrier.find(e);
  if (it == carrier.end()) throw InvalidArgument("edge " + e.str() + " is not an edge of the host graph");
  return it->second;
}

std::vector<int> GadgetedGraph::kept() const {
  std::vector<int> k(host_vertices);
  for (int i = 0; i < host_vertices; ++i) k[i] = i + 1;
  return k;
}

std::vector<int> GadgetedGraph::host_pattern(const std::vector<int>& first_hop) const {
  std::map<Edge, int> reverse;
  for (const auto& [host, arc] : carrier) reverse[arc] = host.v;
  std::vector<int> pat(host_vertices, 0);
  for (int x = 1; x <= host_vertices; ++x) {
    auto it = reverse.find({x, first_hop.at(x - 1)});
    pat[x - 1] = it == reverse.end() ? 0 : it->second;
  }
  return pat;
}

void place_iff(GadgetedGraph& gg, const Edge& e, const Edge& e_prime, const GadgetWiring& wiring) {
  if (wiring.kind != "iff") throw InvalidArgument("place_iff needs an iff wiring");
  if (e == e_prime) throw InvalidArgument("iff gadget needs two distinct edges");
  const Edge a = gg.resolve(e), b = gg.resolve(e_prime);
  WeightedDigraph& g = gg.graph;
  if (!g.has_edge(a) || !g.has_edge(b)) throw InvalidArgument("carrier arc missing");
  const Rational wa = g.weight(a), wb = g.weight(b);
  const int base = g.vertex_count() + 1;
  const int term[4] = {a.u, a.v, b.u, b.v};
  auto id = [&](const GadgetEnd& x) { return x.internal ? base + x.index : term[x.index]; };

  std::set<std::pair<int, int>> fresh;
  for (const GadgetArc& arc : wiring.arcs) {
    const std::pair<int, int> p{id(arc.from), id(arc.to)};
    const bool existing = !arc.from.internal && !arc.to.internal && g.has_edge(p.first, p.second) &&
                          Edge{p.first, p.second} != a && Edge{p.first, p.second} != b;
    if (!fresh.insert(p).second || existing)
      throw InvalidArgument("gadget arc " + Edge{p.first, p.second}.str() + " collides with another arc");
  }
  g.remove_edge(a.u, a.v);
  g.remove_edge(b.u, b.v);
  for (int i = 0; i < wiring.internal_count; ++i) g.add_vertex();
  for (const GadgetArc& arc : wiring.arcs) {
    const int x = id(arc.from), y = id(arc.to);
    Rational w = arc.weight;
    if (arc.carries == 0) w *= wa;
    if (arc.carries == 1) w *= wb;
    g.add_edge(x, y, w);
    if (arc.carries == 0) gg.carrier[e] = {x, y};
    if (arc.carries == 1) gg.carrier[e_prime] = {x, y};
  }
}

GadgetedGraph insert_many_iff_tracked(const WeightedDigraph& g, const std::vector<std::pair<Edge, Edge>>& pairs,
                                      const GadgetWiring& wiring) {
  std::set<Edge> seen;
  for (const auto& [e, ep] : pairs) {
    for (const Edge& x : {e, ep}) {
      if (!g.has_edge(x)) throw InvalidArgument("edge " + x.str() + " is absent");
      if (!seen.insert(x).second) throw InvalidArgument("iff pairs overlap at edge " + x.str());
    }
  }
  GadgetedGraph gg = GadgetedGraph::wrap(g);
  for (const auto& [e, ep] : pairs) place_iff(gg, e, ep, wiring);
  return gg;
}

WeightedDigraph insert_many_iff(const WeightedDigraph& g, const std::vector<std::pair<Edge, Edge>>& pairs,
                                const GadgetWiring& wiring) {
  return insert_many_iff_tracked(g, pairs, wiring).graph;
}

WeightedDigraph insert_iff(const WeightedDigraph& g, const Edge& e, const Edge& e_prime,
                           const GadgetWiring& wiring) {
  return insert_many_iff(g, {{e, e_prime}}, wiring);
}

GadgetedGraph replicate_tracked(const WeightedDigraph& g, int l, const GadgetWiring& wiring) {
  if (l < 1) throw InvalidArgument("replicate needs l >= 1");
  const int n = g.vertex_count();
  WeightedDigraph f(l * n);
  const std::vector<Edge> edges = g.edges();
  for (int i = 0; i < l; ++i)
    for (const Edge& e : edges) f.add_edge(i * n + e.u, i * n + e.v, i == 0 ? g.weight(e) : Rational(1));
  GadgetedGraph gg = GadgetedGraph::wrap(f);
  for (int i = 0; i + 1 < l; ++i)
    for (const Edge& e : edges)
      place_iff(gg, {i * n + e.u, i * n + e.v}, {(i + 1) * n + e.u, (i + 1) * n + e.v}, wiring);
  return gg;
}

WeightedDigraph replicate(const WeightedDigraph& g, int l, const GadgetWiring& wiring) {
  return replicate_tracked(g, l, wiring).graph;
}

std::map<std::vector<int>, Rational> host_class_sums(const GadgetedGraph& gg, const Rational& k, int brute_limit) {
  std::map<Edge, int> reverse;
  for (const auto& [host, arc] : gg.carrier) reverse[arc] = host.v;
  auto hop = [&](int x, int s) {
    auto it = reverse.find({x, s});
    return it == reverse.end() ? 0 : it->second;
  };
  if (gg.graph.vertex_count() <= brute_limit)
    return class_sums_brute(gg.graph, gg.host_vertices, k, brute_limit, hop);
  ClusterOptions opt;
  opt.collect_first_hops = true;
  const ClusterEvaluation ev = evaluate_with_clusters(gg.graph, gg.kept(), k, opt);
  std::map<std::vector<int>, Rational> sums;
  for (const auto& [first, w] : ev.by_first_hop) {
    std::vector<int> key(gg.host_vertices);
    for (int x = 0; x < gg.host_vertices; ++x) key[x] = hop(x + 1, first[x]);
    sums[key] += w;
  }
  return sums;
}

// ---------------------------------------------------------------------------
// Weight elimination gadgets

int place_gadget(WeightedDigraph& g, const GadgetWiring& wiring, const std::vector<int>& terminals) {
  if (terminals.size() != wiring.terminals.size()) throw InvalidArgument("wrong number of gadget terminals");
  const int base = g.vertex_count() + 1;
  for (int i = 0; i < wiring.internal_count; ++i) g.add_vertex();
  for (const GadgetArc& arc : wiring.arcs) {
    auto id = [&](const GadgetEnd& x) { return x.internal ? base + x.index : terminals[x.index]; };
    g.add_edge(id(arc.from), id(arc.to), arc.weight);
  }
  return base;
}

namespace {

// Loop gadget contract on host H (no loop at p = 1): covers of H through p and
// covers of H - p both pick up (-k)^delta. Returns failures for the given
// delta; fills cert rows.
void check_loop(const GadgetWiring& w, const Rational& k, int delta, Rng& rng, GadgetCertificate& cert,
                bool keep) {
  for (int n = 1; n <= 3; ++n)
    for (int t = 0; t < 4; ++t) {
      WeightedDigraph host(n);
      for (int u = 1; u <= n; ++u)
        for (int v = 1; v <= n; ++v)
          if (!(u == 1 && v == 1)) host.add_edge(u, v, t == 0 ? Rational(1) : rng.nonzero_rational());
      WeightedDigraph g = host;
      const int q0 = place_gadget(g, w, {1});
      auto hop = [&](int x, int s) { return s >= q0 ? (x == 1 ? 0 : -1) : s; };
      const auto observed = class_sums_brute(g, n, k, 12, hop);
      const Rational f = power(-k, delta);
      std::map<std::vector<int>, Rational> expected;
      for_each_permutation(n, [&](const std::vector<int>& p0) {
        std::vector<int> pat(n);
        for (int x = 0; x < n; ++x) pat[x] = p0[x] + 1;
        if (pat[0] != 1) expected[pat] = f * pattern_term(host, pat, k);
      });
      if (n == 1) {
        expected[{0}] = f;
      } else {
        for_each_permutation(n - 1, [&](const std::vector<int>& p0) {
          std::vector<int> pat(n, 0);
          for (int x = 1; x < n; ++x) pat[x] = p0[x - 1] + 2;
          expected[pat] = f * pattern_term(host, pat, k);
        });
      }
      Checker check{&cert, keep && t == 1, "H" + std::to_string(n) + " p=1 w#" + std::to_string(t)};
      check.compare(expected, observed, [](const std::vector<int>& pat) -> std::string {
        for (int v : pat)
          if (v < 0) return "non-cover";
        return pat[0] == 0 ? "skip" : "through";
      });
    }
}

// Diamond contract: graph with arc x -> y of weight 2 versus the graph with
// that arc replaced by the gadget, class by class, up to (-k)^delta.
void check_diamond(const GadgetWiring& w, const Rational& k, int delta, Rng& rng, GadgetCertificate& cert,
                   bool keep) {
  for (int n = 1; n <= 3; ++n)
    for (int y = (n == 1 ? 1 : 2); y >= 1; --y)
      for (int t = 0; t < 4; ++t) {
        WeightedDigraph host(n);
        for (int u = 1; u <= n; ++u)
          for (int v = 1; v <= n; ++v)
            host.add_edge(u, v, (u == 1 && v == y) ? Rational(2) : t == 0 ? Rational(1) : rng.nonzero_rational());
        WeightedDigraph g = host;
        g.remove_edge(1, y);
        const int base = place_gadget(g, w, {1, y});
        auto hop = [&](int x, int s) { return s >= base ? (x == 1 ? y : -1) : s; };
        const auto observed = class_sums_brute(g, n, k, 12, hop);
        const Rational f = power(-k, delta);
        std::map<std::vector<int>, Rational> expected;
        for_each_permutation(n, [&](const std::vector<int>& p0) {
          std::vector<int> pat(n);
          for (int x = 0; x < n; ++x) pat[x] = p0[x] + 1;
          expected[pat] = f * pattern_term(host, pat, k);
        });
        Checker check{&cert, keep && t == 1,
                      "H" + std::to_string(n) + " x=1 y=" + std::to_string(y) + " w#" + std::to_string(t)};
        check.compare(expected, observed, [&](const std::vector<int>& pat) -> std::string {
          for (int v : pat)
            if (v < 0) return "non-cover";
          return pat[0] == y ? "through" : "skip";
        });
      }
}

GadgetCertificate search_loop(const Rational& k) {
  if (k.is_zero()) throw InvalidArgument("loop gadget needs k != 0");
  // Candidate arcs on {p (terminal 0), q (internal 0)}.
  const GadgetArc pool[3] = {{GadgetEnd::term(0), GadgetEnd::in(0), 1, -1},
                             {GadgetEnd::in(0), GadgetEnd::term(0), 1, -1},
                             {GadgetEnd::in(0), GadgetEnd::in(0), 1, -1}};
  std::vector<unsigned> masks{1, 2, 4, 3, 5, 6, 7};
  long best_fail = -1;
  GadgetCertificate best;
  for (unsigned mask : masks)
    for (int delta = 0; delta <= 2; ++delta) {
      GadgetCertificate cert;
      cert.wiring.kind = "loop";
      cert.wiring.k = k;
      cert.wiring.internal_count = 1;
      cert.wiring.terminals = {"p"};
      for (int i = 0; i < 3; ++i)
        if (mask >> i & 1) cert.wiring.arcs.push_back(pool[i]);
      const Rational f = power(-k, delta);
      cert.contract = {"loop", k, {{"through", f, delta}, {"skip", f, delta}}};
      cert.k_samples = {k};
      Rng rng(7);
      check_loop(cert.wiring, k, delta, rng, cert, true);
      if (cert.passed()) return cert;
      if (best_fail < 0 || cert.failures < best_fail) {
        best_fail = cert.failures;
        best = cert;
      }
    }
  throw CertificationFailure("no certified loop gadget for k=" + k.str() + "; best partial candidate has " +
                             std::to_string(best_fail) + " failing classes");
}

GadgetCertificate search_diamond(const Rational& k) {
  const GadgetWiring& lg = loop_gadget(k).wiring;
  const int loop_delta = loop_gadget(k).contract.at("through").cycle_delta;
  // Middles m in {1, 2}; each may carry a loop gadget.
  long best_fail = -1;
  for (int m = 1; m <= 2; ++m)
    for (unsigned lmask = 0; lmask < (1u << m); ++lmask) {
      GadgetWiring w;
      w.kind = "diamond";
      w.k = k;
      w.terminals = {"x", "y"};
      w.internal_count = m;
      for (int i = 0; i < m; ++i) {
        w.arcs.push_back({GadgetEnd::term(0), GadgetEnd::in(i), 1, -1});
        w.arcs.push_back({GadgetEnd::in(i), GadgetEnd::term(1), 1, -1});
      }
      for (int i = 0; i < m; ++i) {
        if (!(lmask >> i & 1)) continue;
        const int q0 = w.internal_count;
        w.internal_count += lg.internal_count;
        for (const GadgetArc& a : lg.arcs) {
          auto map = [&](const GadgetEnd& e) { return e.internal ? GadgetEnd::in(q0 + e.index) : GadgetEnd::in(i); };
          w.arcs.push_back({map(a.from), map(a.to), a.weight, -1});
        }
      }
      const int delta = __builtin_popcount(lmask) * loop_delta;
      GadgetCertificate cert;
      cert.wiring = w;
      cert.contract = {"diamond", k, {{"through", 2 * power(-k, delta), delta}, {"skip", power(-k, delta), delta}}};
      cert.k_samples = {k};
      Rng rng(11);
      check_diamond(w, k, delta, rng, cert, true);
      if (cert.passed()) return cert;
      if (best_fail < 0 || cert.failures < best_fail) best_fail = cert.failures;
    }
  throw CertificationFailure("no certified diamond gadget for k=" + k.str() + "; best partial candidate has " +
                             std::to_string(best_fail) + " failing classes");
}

template <typename Fn>
const GadgetCertificate& memo(std::map<Rational, GadgetCertificate>& cache, std::recursive_mutex& mu,
                              const Rational& k, Fn&& make) {
  std::lock_guard<std::recursive_mutex> lock(mu);
  auto it = cache.find(k);
  if (it == cache.end()) it = cache.emplace(k, make(k)).first;
  return it->second;
}

std::recursive_mutex small_gadget_mu;

}  // namespace

const GadgetCertificate& loop_gadget(const Rational& k) {
  static std::map<Rational, GadgetCertificate> cache;
  return memo(cache, small_gadget_mu, k, search_loop);
}

const GadgetCertificate& diamond_gadget(const Rational& k) {
  static std::map<Rational, GadgetCertificate> cache;
  return memo(cache, small_gadget_mu, k, search_diamond);
}

long loop_gadget_count(const mpz_class& a) {
  if (a < 0) throw InvalidArgument("loop_gadget_count needs a >= 0");
  long count = 0;
  const size_t bits = mpz_sizeinbase(a.get_mpz_t(), 2);
  for (size_t b = 1; b < bits + 1; ++b)
    if (mpz_tstbit(a.get_mpz_t(), b)) count += static_cast<long>(b - 1) + 2 * static_cast<long>(b);
  return count;
}

WeightElimination eliminate_weights(const WeightedDigraph& g, const Rational& k, const mpz_class& lambda) {
  if (!k.is_integer() || k.is_zero() || k == 1) throw InvalidArgument("eliminate_weights needs integer k not in {0,1}");
  for (const auto& [e, w] : g.edge_map()) {
    if (!w.is_integer()) throw InvalidArgument("weight " + w.str() + " is not an integer");
    if (w < 0) throw InvalidArgument("negative weight " + w.str() + "; map -m to (Lambda-1)m first");
    if (!(w < Rational(lambda))) throw InvalidArgument("weight " + w.str() + " >= Lambda");
  }
  const GadgetCertificate& lc = loop_gadget(k);
  const GadgetCertificate& dc = diamond_gadget(k);
  const long loop_delta = lc.contract.at("through").cycle_delta;
  const long diamond_delta = dc.contract.at("through").cycle_delta;

  WeightElimination out;
  const int n = g.vertex_count();
  out.host_vertices = n;
  out.graph = WeightedDigraph(n);
  WeightedDigraph& h = out.graph;
  for (const auto& [e, w] : g.edge_map()) {
    const mpz_class a = w.numerator();
    if (a == 0) continue;
    if (mpz_tstbit(a.get_mpz_t(), 0)) h.add_edge(e.first, e.second, 1);
    long gamma = 0;
    const size_t bits = mpz_sizeinbase(a.get_mpz_t(), 2);
    for (size_t b = 1; b < bits; ++b) {
      if (!mpz_tstbit(a.get_mpz_t(), b)) continue;
      std::vector<int> chain{e.first};
      for (size_t j = 1; j < b; ++j) {
        const int c = h.add_vertex();
        place_gadget(h, lc.wiring, {c});
        chain.push_back(c);
      }
      chain.push_back(e.second);
      for (size_t j = 1; j <= b; ++j) place_gadget(h, dc.wiring, {chain[j - 1], chain[j]});
      gamma += static_cast<long>(b - 1) * loop_delta + static_cast<long>(b) * diamond_delta;
    }
    out.per_edge_gamma[Edge{e.first, e.second}] = gamma;
    out.gamma += gamma;
  }
  for (int v = n + 1; v <= h.vertex_count(); ++v)
    if (h.has_edge(v, v)) out.census_gamma += loop_delta;
  return out;
}

// ---------------------------------------------------------------------------
// Serialization

std::string certificate_to_json(const GadgetCertificate& cert) {
  using nlohmann::ordered_json;
  const GadgetWiring& w = cert.wiring;
  ordered_json j;
  j["format"] = "ferm-gadget-certificate/1";
  j["kind"] = w.kind;
  j["k"] = w.k.str();
  j["internal_count"] = w.internal_count;
  j["terminals"] = w.terminals;
  if (w.kind == "iff") {
    j["variant"] = w.variant.describe();
    j["variant_rule"] = {{"transpose", w.variant.transpose},
                         {"sign_mask", w.variant.sign_mask},
                         {"sub_row", w.variant.sub_row},
                         {"sub_col", w.variant.sub_col},
                         {"sub_code", w.variant.sub_code}};
    ordered_json m = ordered_json::array();
    const RationalMatrix iw = w.internal_weights();
    for (int r = 0; r < iw.rows(); ++r) {
      ordered_json row = ordered_json::array();
      for (int c = 0; c < iw.cols(); ++c) row.push_back(iw(r, c).str());
      m.push_back(row);
    }
    j["internal_weights"] = m;
    auto att = [](const Attachment& a) {
      std::vector<int> exits;
      for (int x : a.exits) exits.push_back(x + 1);
      return ordered_json{{"entry", a.entry + 1}, {"exits", exits}};
    };
    j["attachment"] = {{"e", att(w.attach_e)}, {"e_prime", att(w.attach_e_prime)}};
  }
  ordered_json arcs = ordered_json::array();
  for (const GadgetArc& a : w.arcs) {
    ordered_json arc{{"from", end_name(w, a.from)}, {"to", end_name(w, a.to)}, {"weight", a.weight.str()}};
    arc["carries"] = a.carries == 0 ? ordered_json("e") : a.carries == 1 ? ordered_json("e'") : ordered_json();
    arcs.push_back(arc);
  }
  j["arcs"] = arcs;
  ordered_json cases = ordered_json::array();
  for (const ContractCase& c : cert.contract.cases)
    cases.push_back({{"case", c.name}, {"factor", c.factor.str()}, {"cycle_delta", c.cycle_delta}});
  j["contract"] = cases;
  std::vector<std::string> ks;
  for (const Rational& k : cert.k_samples) ks.push_back(k.str());
  j["k_samples"] = ks;
  j["classes_checked"] = cert.classes_checked;
  j["failures"] = cert.failures;
  ordered_json rows = ordered_json::array();
  for (const TestbedRow& r : cert.rows)
    rows.push_back({{"testbed", r.testbed},
                    {"cover", r.cover},
                    {"case", r.case_name},
                    {"expected", r.expected.str()},
                    {"observed", r.observed.str()}});
  j["rows"] = rows;
  return j.dump(1) + "\n";
}

GadgetWiring wiring_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("certificate is not valid JSON: ") + e.what());
  }
  try {
    if (j.at("format") != "ferm-gadget-certificate/1") throw FormatError("unknown certificate format");
    GadgetWiring w;
    w.kind = j.at("kind").get<std::string>();
    w.k = Rational::parse(j.at("k").get<std::string>());
    w.internal_count = j.at("internal_count").get<int>();
    w.terminals = j.at("terminals").get<std::vector<std::string>>();
    if (w.kind == "iff") {
      const auto& r = j.at("variant_rule");
      w.variant = {r.at("transpose").get<bool>(), r.at("sign_mask").get<unsigned>(), r.at("sub_row").get<int>(),
                   r.at("sub_col").get<int>(), r.at("sub_code").get<int>()};
      auto att = [](const nlohmann::json& a) {
        Attachment out{a.at("entry").get<int>() - 1, {}};
        for (int x : a.at("exits").get<std::vector<int>>()) out.exits.push_back(x - 1);
        return out;
      };
      w.attach_e = att(j.at("attachment").at("e"));
      w.attach_e_prime = att(j.at("attachment").at("e_prime"));
    }
    for (const auto& a : j.at("arcs")) {
      GadgetArc arc;
      arc.from = parse_end(w, a.at("from").get<std::string>());
      arc.to = parse_end(w, a.at("to").get<std::string>());
      arc.weight = Rational::parse(a.at("weight").get<std::string>());
      const auto& c = a.at("carries");
      arc.carries = c.is_null() ? -1 : c.get<std::string>() == "e" ? 0 : 1;
      w.arcs.push_back(arc);
    }
    return w;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed certificate: ") + e.what());
  }
}

}  // namespace ferm
