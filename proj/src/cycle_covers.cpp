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

#include "ferm/cycle_covers.hpp"

#include <algorithm>

#include "ferm/errors.hpp"

namespace ferm {

namespace {

struct Sparse {
  int n = 0;
  std::vector<std::vector<std::pair<int, Rational>>> out;  // 0-based
  std::vector<std::vector<int>> in;
};

Sparse to_sparse(const WeightedDigraph& g) {
  Sparse s;
  s.n = g.vertex_count();
  s.out.resize(s.n);
  s.in.resize(s.n);
  for (const auto& [e, w] : g.edge_map()) {
    if (w.is_zero()) continue;
    s.out[e.first - 1].push_back({e.second - 1, w});
    s.in[e.second - 1].push_back(e.first - 1);
  }
  return s;
}

// Cycle weight sums C(S), indexed by vertex bitmask, over cycles whose vertex
// set is exactly S. Each cycle is generated once, from its minimum vertex.
std::vector<Rational> cycle_sums(const WeightedDigraph& g) {
  const int n = g.vertex_count();
  if (n > 18) throw EnumerationTooLarge("subset DP refuses n > 18");
  const Sparse sp = to_sparse(g);
  std::vector<Rational> c(size_t(1) << n);
  for (int s = 0; s < n; ++s) {
    const int free_bits = n - s - 1;
    const size_t count = size_t(1) << free_bits;
    // h[hi * n + end]: paths from s visiting {s} plus the bits of hi above s.
    std::vector<Rational> h(count * n);
    std::vector<char> live(count * n, 0);
    h[s] = 1;
    live[s] = 1;
    for (size_t hi = 0; hi < count; ++hi) {
      const size_t mask = (size_t(1) << s) | (hi << (s + 1));
      for (int end = s; end < n; ++end) {
        const size_t idx = hi * n + end;
        if (!live[idx]) continue;
        const Rational& cur = h[idx];
        for (const auto& [j, w] : sp.out[end]) {
          if (j == s) {
            c[mask] += cur * w;
          } else if (j > s && !(mask >> j & 1)) {
            const size_t nhi = hi | (size_t(1) << (j - s - 1));
            const size_t nidx = nhi * n + j;
            h[nidx] += cur * w;
            live[nidx] = 1;
          }
        }
      }
    }
  }
  return c;
}

}  // namespace

std::vector<CycleCover> cycle_covers(const WeightedDigraph& g) {
  check_enumeration_cap(g.vertex_count(), "cycle_covers");
  std::vector<std::vector<int>> found;
  for_each_cycle_cover(g, g.vertex_count(), [&](const std::vector<int>& succ) { found.push_back(succ); });
  std::sort(found.begin(), found.end());
  std::vector<CycleCover> out;
  out.reserve(found.size());
  for (auto& succ : found) {
    for (int& v : succ) ++v;
    out.push_back({Permutation(std::move(succ))});
  }
  return out;
}

void for_each_cycle_cover(const WeightedDigraph& g, int max_vertices,
                          const std::function<void(const std::vector<int>&)>& visit) {
  const int n = g.vertex_count();
  if (n > max_vertices)
    throw EnumerationTooLarge("enumeration too large: cycle covers need n=" + std::to_string(n) +
                              " > limit " + std::to_string(max_vertices));
  const Sparse sp = to_sparse(g);
  std::vector<int> succ(n, -1);
  std::vector<char> taken(n, 0);
  // in_avail[t]: unassigned vertices with an edge into untaken target t.
  std::vector<int> in_avail(n, 0);
  for (int t = 0; t < n; ++t) in_avail[t] = static_cast<int>(sp.in[t].size());

  auto rec = [&](auto&& self, int assigned) -> void {
    if (assigned == n) {
      visit(succ);
      return;
    }
    for (int t = 0; t < n; ++t)
      if (!taken[t] && in_avail[t] == 0) return;
    int best = -1, best_count = n + 1;
    for (int u = 0; u < n; ++u) {
      if (succ[u] >= 0) continue;
      int cnt = 0;
      for (const auto& [j, w] : sp.out[u]) cnt += !taken[j];
      if (cnt < best_count) {
        best = u;
        best_count = cnt;
        if (cnt <= 1) break;
      }
    }
    if (best_count == 0) return;
    for (const auto& [j, w] : sp.out[best]) (void)j, --in_avail[j];
    for (const auto& [j, w] : sp.out[best]) {
      if (taken[j]) continue;
      taken[j] = 1;
      succ[best] = j;
      self(self, assigned + 1);
      succ[best] = -1;
      taken[j] = 0;
    }
    for (const auto& [j, w] : sp.out[best]) (void)j, ++in_avail[j];
  };
  rec(rec, 0);
}

Rational cover_weight(const WeightedDigraph& g, const CycleCover& c) {
  Rational w(1);
  for (int i = 1; i <= c.permutation.size(); ++i) w *= g.weight(i, c.permutation(i));
  return w;
}

Rational fermionant_by_covers(const WeightedDigraph& g, const Rational& k, int max_vertices) {
  const int n = g.vertex_count();
  std::vector<Rational> powers(n + 1);
  powers[0] = 1;
  for (int i = 1; i <= n; ++i) powers[i] = powers[i - 1] * (-k);
  Rational total(0);
  for_each_cycle_cover(g, max_vertices, [&](const std::vector<int>& succ) {
    Rational w(1);
    for (int i = 0; i < n; ++i) w *= g.weight(i + 1, succ[i] + 1);
    total += powers[cycle_count_raw(succ)] * w;
  });
  return total;
}

Rational fermionant_dp(const WeightedDigraph& g, const Rational& k) {
  const int n = g.vertex_count();
  if (n == 0) return Rational(1);
  const std::vector<Rational> c = cycle_sums(g);
  const Rational mk = -k;
  const size_t full = (size_t(1) << n) - 1;
  std::vector<Rational> f(full + 1);
  f[0] = 1;
  for (size_t r = 1; r <= full; ++r) {
    const size_t low = r & (~r + 1);
    const size_t rest = r ^ low;
    Rational acc(0);
    // S = low | t for every t subset of rest.
    for (size_t t = rest;; t = (t - 1) & rest) {
      const size_t s = low | t;
      if (!c[s].is_zero() && !f[r ^ s].is_zero()) acc += c[s] * f[r ^ s];
      if (t == 0) break;
    }
    f[r] = mk * acc;
  }
  return f[full];
}

Rational StratifiedWeights::evaluate(const Rational& k) const {
  Rational total(0), power(1);
  for (int m = 1; m <= n(); ++m) {
    power *= -k;
    total += power * c[m];
  }
  return total;
}

StratifiedWeights stratified_weights(const WeightedDigraph& g) {
  const int n = g.vertex_count();
  if (n > 16) throw EnumerationTooLarge("stratified_weights refuses n > 16");
  const std::vector<Rational> c = cycle_sums(g);
  const size_t full = (size_t(1) << n) - 1;
  // f[r][m]: total weight of covers of r with m cycles.
  std::vector<std::vector<Rational>> f(full + 1);
  f[0] = {Rational(1)};
  for (size_t r = 1; r <= full; ++r) {
    const int size = __builtin_popcountl(r);
    std::vector<Rational> acc(size + 1);
    const size_t low = r & (~r + 1);
    const size_t rest = r ^ low;
    for (size_t t = rest;; t = (t - 1) & rest) {
      const size_t s = low | t;
      if (!c[s].is_zero()) {
        const auto& sub = f[r ^ s];
        for (size_t m = 0; m < sub.size(); ++m)
          if (!sub[m].is_zero()) acc[m + 1] += c[s] * sub[m];
      }
      if (t == 0) break;
    }
    f[r] = std::move(acc);
  }
  StratifiedWeights out;
  out.c = f[full];
  out.c.resize(n + 1);
  return out;
}

Rational hamiltonian(const WeightedDigraph& g) {
  if (g.vertex_count() == 0) return Rational(0);
  return cycle_sums(g).back();
}

Rational hamiltonian(const RationalMatrix& a) { return hamiltonian(WeightedDigraph::from_matrix(a)); }

Rational determinant_exact(const RationalMatrix& a) { return determinant_bareiss(a); }

}  // namespace ferm
