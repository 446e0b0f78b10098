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

#include "ferm/cluster.hpp"

#include <algorithm>
#include <set>

#include "ferm/errors.hpp"
#include "ferm/permutation.hpp"

namespace ferm {

namespace {

struct Arc {
  int to;
  Rational w;
};

std::vector<std::vector<Arc>> out_arcs(const WeightedDigraph& g) {
  std::vector<std::vector<Arc>> out(g.vertex_count() + 1);
  for (const auto& [e, w] : g.edge_map())
    if (!w.is_zero()) out[e.first].push_back({e.second, w});
  return out;
}

}  // namespace

std::vector<std::vector<int>> clusters_outside(const WeightedDigraph& g, const std::vector<int>& kept) {
  const int n = g.vertex_count();
  std::vector<char> is_kept(n + 1, 0);
  for (int v : kept) is_kept.at(v) = 1;
  std::vector<std::vector<int>> adj(n + 1);
  for (const auto& [e, w] : g.edge_map()) {
    if (w.is_zero() || is_kept[e.first] || is_kept[e.second] || e.first == e.second) continue;
    adj[e.first].push_back(e.second);
    adj[e.second].push_back(e.first);
  }
  std::vector<int> comp(n + 1, -1);
  std::vector<std::vector<int>> out;
  for (int s = 1; s <= n; ++s) {
    if (is_kept[s] || comp[s] >= 0) continue;
    std::vector<int> members{s};
    comp[s] = static_cast<int>(out.size());
    for (size_t i = 0; i < members.size(); ++i)
      for (int t : adj[members[i]])
        if (comp[t] < 0) {
          comp[t] = comp[s];
          members.push_back(t);
        }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

ClusterTable cluster_table(const WeightedDigraph& g, const std::vector<int>& kept,
                           const std::vector<int>& internal, const Rational& k) {
  const int n = g.vertex_count();
  const int m = static_cast<int>(internal.size());
  std::vector<char> is_kept(n + 1, 0);
  for (int v : kept) is_kept.at(v) = 1;
  std::vector<int> local(n + 1, -1);
  for (int i = 0; i < m; ++i) local[internal[i]] = i;

  const auto out = out_arcs(g);
  // succ_opts[i]: (local target or -1 - keptId, weight).
  std::vector<std::vector<std::pair<int, Rational>>> succ_opts(m);
  std::vector<std::vector<std::pair<int, Rational>>> sources(m);
  for (int i = 0; i < m; ++i)
    for (const Arc& a : out[internal[i]]) {
      if (local[a.to] >= 0)
        succ_opts[i].push_back({local[a.to], a.w});
      else if (is_kept[a.to])
        succ_opts[i].push_back({-1 - a.to, a.w});
      else
        throw InvalidArgument("cluster arc leaves to another cluster");
    }
  for (int x : kept)
    for (const Arc& a : out[x])
      if (local[a.to] >= 0) sources[local[a.to]].push_back({x, a.w});

  std::vector<Rational> powers(m + 1);
  powers[0] = 1;
  for (int i = 1; i <= m; ++i) powers[i] = powers[i - 1] * (-k);

  ClusterTable table;
  std::vector<int> succ(m, 0);
  std::vector<char> hit(m, 0);
  std::vector<Rational> partial(m + 1);
  partial[0] = 1;

  auto leaf = [&]() {
    std::vector<int> entries;
    for (int i = 0; i < m; ++i)
      if (!hit[i]) entries.push_back(i);
    std::vector<char> on_path(m, 0);
    std::vector<int> exits;
    for (int p : entries) {
      int cur = p;
      for (;;) {
        on_path[cur] = 1;
        if (succ[cur] < 0) break;
        cur = succ[cur];
      }
      exits.push_back(-1 - succ[cur]);
    }
    int cycles = 0;
    std::vector<char> seen(on_path);
    for (int i = 0; i < m; ++i) {
      if (seen[i]) continue;
      ++cycles;
      for (int j = i; !seen[j]; j = succ[j]) seen[j] = 1;
    }
    const Rational base = partial[m] * powers[cycles];
    // Distinct kept sources for the entries.
    std::vector<Passage> key(entries.size());
    std::vector<int> used_src;
    auto assign = [&](auto&& self, size_t idx, const Rational& w) -> void {
      if (idx == entries.size()) {
        std::vector<Passage> sorted(key);
        std::sort(sorted.begin(), sorted.end());
        table[sorted] += w;
        return;
      }
      const int p = entries[idx];
      for (const auto& [x, wx] : sources[p]) {
        if (std::find(used_src.begin(), used_src.end(), x) != used_src.end()) continue;
        used_src.push_back(x);
        key[idx] = {x, internal[p], exits[idx]};
        self(self, idx + 1, w * wx);
        used_src.pop_back();
      }
    };
    assign(assign, 0, base);
  };

  auto rec = [&](auto&& self, int i) -> void {
    if (i == m) {
      leaf();
      return;
    }
    for (const auto& [t, w] : succ_opts[i]) {
      if (t >= 0 && hit[t]) continue;
      if (t >= 0) hit[t] = 1;
      succ[i] = t;
      partial[i + 1] = partial[i] * w;
      self(self, i + 1);
      if (t >= 0) hit[t] = 0;
    }
  };
  rec(rec, 0);
  return table;
}

ClusterEvaluation evaluate_with_clusters(const WeightedDigraph& g, const std::vector<int>& kept_in,
                                         const Rational& k, const ClusterOptions& options) {
  const int n = g.vertex_count();
  std::vector<int> kept(kept_in);
  std::sort(kept.begin(), kept.end());
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end())
    throw InvalidArgument("kept vertices must be distinct");
  const int nk = static_cast<int>(kept.size());
  if (nk > options.max_kept)
    throw EnumerationTooLarge("cluster evaluation: " + std::to_string(nk) + " kept vertices > " +
                              std::to_string(options.max_kept));
  std::vector<int> kidx(n + 1, -1);
  for (int i = 0; i < nk; ++i) kidx[kept[i]] = i;

  const auto clusters = clusters_outside(g, kept);
  std::vector<int> cluster_of(n + 1, -1);
  for (size_t c = 0; c < clusters.size(); ++c) {
    if (static_cast<int>(clusters[c].size()) > options.max_cluster)
      throw EnumerationTooLarge("cluster evaluation: cluster of " + std::to_string(clusters[c].size()) +
                                " vertices > " + std::to_string(options.max_cluster));
    for (int v : clusters[c]) cluster_of[v] = static_cast<int>(c);
  }
  for (const auto& [e, w] : g.edge_map())
    if (!w.is_zero() && cluster_of[e.first] >= 0 && cluster_of[e.second] >= 0 &&
        cluster_of[e.first] != cluster_of[e.second])
      throw InvalidArgument("arc joins two clusters");

  const size_t nc = clusters.size();
  std::vector<ClusterTable> tables(nc);
  std::vector<std::set<std::vector<Passage>>> prefixes(nc);
  for (size_t c = 0; c < nc; ++c) {
    tables[c] = cluster_table(g, kept, clusters[c], k);
    for (auto it = tables[c].begin(); it != tables[c].end();) {
      if (it->second.is_zero())
        it = tables[c].erase(it);
      else
        ++it;
    }
    for (const auto& [key, w] : tables[c])
      for (size_t len = 0; len <= key.size(); ++len) prefixes[c].insert(std::vector<Passage>(key.begin(), key.begin() + len));
  }

  // Options per kept vertex: direct arcs and cluster entries.
  struct Direct {
    int y;
    Rational w;
  };
  struct Entry {
    int cluster;
    int p;
  };
  const auto out = out_arcs(g);
  std::vector<std::vector<Direct>> direct(nk);
  std::vector<std::vector<Entry>> entries(nk);
  for (int i = 0; i < nk; ++i)
    for (const Arc& a : out[kept[i]]) {
      if (kidx[a.to] >= 0)
        direct[i].push_back({kidx[a.to], a.w});
      else
        entries[i].push_back({cluster_of[a.to], a.to});
    }

  std::vector<Rational> powers(nk + 1);
  powers[0] = 1;
  for (int i = 1; i <= nk; ++i) powers[i] = powers[i - 1] * (-k);

  ClusterEvaluation result;
  std::vector<int> sigma(nk, -1);
  std::vector<char> target_used(nk, 0);
  std::vector<std::vector<Passage>> current(nc);
  std::vector<int> first_hop(nk, 0);
  std::vector<int> caller_pos(nk);
  for (int i = 0; i < nk; ++i)
    caller_pos[i] = static_cast<int>(std::find(kept_in.begin(), kept_in.end(), kept[i]) - kept_in.begin());

  auto leaf = [&](const Rational& direct_w) {
    Rational w = direct_w;
    for (size_t c = 0; c < nc && !w.is_zero(); ++c) {
      auto it = tables[c].find(current[c]);
      if (it == tables[c].end()) return;
      w *= it->second;
    }
    if (w.is_zero()) return;
    w *= powers[cycle_count_raw(sigma)];
    result.total += w;
    if (options.collect_first_hops) {
      std::vector<int> key(nk);
      for (int i = 0; i < nk; ++i) key[caller_pos[i]] = first_hop[i];
      result.by_first_hop[key] += w;
    }
  };

  auto rec = [&](auto&& self, int i, const Rational& w) -> void {
    if (i == nk) {
      leaf(w);
      return;
    }
    for (const Direct& d : direct[i]) {
      if (target_used[d.y]) continue;
      target_used[d.y] = 1;
      sigma[i] = d.y;
      first_hop[i] = kept[d.y];
      self(self, i + 1, w * d.w);
      target_used[d.y] = 0;
    }
    for (const Entry& en : entries[i]) {
      auto& cur = current[en.cluster];
      for (int y = 0; y < nk; ++y) {
        if (target_used[y]) continue;
        cur.push_back({kept[i], en.p, kept[y]});
        if (prefixes[en.cluster].count(cur)) {
          target_used[y] = 1;
          sigma[i] = y;
          first_hop[i] = en.p;
          self(self, i + 1, w);
          target_used[y] = 0;
        }
        cur.pop_back();
      }
    }
  };
  rec(rec, 0, Rational(1));
  return result;
}

}  // namespace ferm
