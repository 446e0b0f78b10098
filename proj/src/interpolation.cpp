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

#include "ferm/interpolation.hpp"

#include <algorithm>
#include <functional>

#include "ferm/errors.hpp"
#include "ferm/reduce.hpp"

namespace ferm {

namespace {

mpz_class to_integer(const Rational& r, const char* what) {
  if (!r.is_integer()) throw InvalidArgument(std::string(what) + " is not an integer: " + r.str());
  return r.numerator();
}

mpz_class mod_pow(const mpz_class& base, unsigned long e, const mpz_class& m) {
  mpz_class b = mod(base, m), out;
  mpz_powm_ui(out.get_mpz_t(), b.get_mpz_t(), e, m.get_mpz_t());
  return out;
}

WeightedDigraph map_weights(const WeightedDigraph& g, const std::function<Rational(const Rational&)>& f) {
  WeightedDigraph out(g.vertex_count());
  for (const auto& [e, w] : g.edge_map()) out.add_edge(e.first, e.second, f(w));
  return out;
}

std::vector<int> first_vertices(int count) {
  std::vector<int> v(count);
  for (int i = 0; i < count; ++i) v[i] = i + 1;
  return v;
}

}  // namespace

std::vector<Rational> vandermonde_solve(const std::vector<Rational>& nodes, const std::vector<Rational>& values) {
  const size_t n = nodes.size();
  if (values.size() != n) throw InvalidArgument("vandermonde_solve: node and value counts differ");
  for (size_t i = 0; i < n; ++i) {
    if (nodes[i].is_zero()) throw DegenerateNodes("degenerate nodes: node " + std::to_string(i + 1) + " is 0");
    for (size_t j = 0; j < i; ++j)
      if (nodes[i] == nodes[j])
        throw DegenerateNodes("degenerate nodes: nodes " + std::to_string(j + 1) + " and " + std::to_string(i + 1) +
                              " are both " + nodes[i].str());
  }
  // Augmented system, row l: node_l^1 .. node_l^n | value_l.
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n + 1));
  for (size_t l = 0; l < n; ++l) {
    Rational p = nodes[l];
    for (size_t c = 0; c < n; ++c) {
      m[l][c] = p;
      p *= nodes[l];
    }
    m[l][n] = values[l];
  }
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (m[piv][col].is_zero()) ++piv;  // nonsingular, so a pivot exists
    std::swap(m[piv], m[col]);
    const Rational inv = Rational(1) / m[col][col];
    for (size_t c = col; c <= n; ++c) m[col][c] *= inv;
    for (size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col].is_zero()) continue;
      const Rational f = m[r][col];
      for (size_t c = col; c <= n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  std::vector<Rational> out(n);
  for (size_t i = 0; i < n; ++i) out[i] = m[i][n];
  return out;
}

InterpolationPlan make_plan(const WeightedDigraph& g, const Rational& k) {
  if (k.is_zero() || k == 1)
    throw DegenerateNodes("degenerate nodes: k=" + k.str() + " makes the Vandermonde system singular");
  if (k == -1)
    throw DegenerateNodes(
        "degenerate nodes: at k=-1 every node (-k)^l equals 1, so the Hamiltonian is not recoverable by "
        "interpolation; use the permanent identity Ferm_{-1} = per instead");
  InterpolationPlan plan;
  plan.k = k;
  plan.n = g.vertex_count();
  for (const auto& [e, w] : g.edge_map()) plan.edges += !w.is_zero();
  plan.alpha = pow((1 - k) / 2, plan.edges - plan.n);
  Rational p(1);
  for (int l = 1; l <= plan.n; ++l) {
    p *= -k;
    plan.nodes.push_back(p);
  }
  return plan;
}

Rational gadgeted_fermionant(const GadgetedGraph& gg, const Rational& k) {
  return evaluate_fermionant(gg.graph, k, gg.kept(), 12);
}

StratifiedWeights recover_stratified(const WeightedDigraph& g_in, const Rational& k, const GadgetWiring& wiring,
                                     InterpolationTrace* trace) {
  if (wiring.k != k) throw InvalidArgument("wiring certified for k=" + wiring.k.str() + ", not k=" + k.str());
  // Zero-weight edges are pruned so that |E| counts present edges only.
  WeightedDigraph g(g_in.vertex_count());
  for (const auto& [e, w] : g_in.edge_map())
    if (!w.is_zero()) g.add_edge(e.first, e.second, w);
  InterpolationTrace local;
  InterpolationTrace& t = trace ? *trace : local;
  t = InterpolationTrace{};
  t.plan = make_plan(g, k);
  const int n = t.plan.n;
  StratifiedWeights out;
  out.c.assign(n + 1, Rational(0));
  if (n == 0) return out;
  Rational alpha_power(1);
  for (int l = 1; l <= n; ++l) {
    const GadgetedGraph gg = replicate_tracked(g, l, wiring);
    t.sizes.push_back(gg.graph.vertex_count());
    t.values.push_back(gadgeted_fermionant(gg, k));
    t.scaled.push_back(t.values.back() / alpha_power);
    alpha_power *= t.plan.alpha;
  }
  const std::vector<Rational> c = vandermonde_solve(t.plan.nodes, t.scaled);
  for (int m = 1; m <= n; ++m) out.c[m] = c[m - 1];
  alpha_power = 1;
  for (int l = 1; l <= n; ++l) {
    std::vector<Rational> unit(n, Rational(0));
    unit[l - 1] = 1;
    t.ham_weights.push_back(vandermonde_solve(t.plan.nodes, unit)[0] / alpha_power);
    alpha_power *= t.plan.alpha;
  }
  return out;
}

Rational hamiltonian_via_fermionant(const RationalMatrix& a, const Rational& k, const GadgetWiring& wiring,
                                    InterpolationTrace* trace) {
  return recover_stratified(WeightedDigraph::from_matrix(a), k, wiring, trace)[1];
}

bool ModularReport::ok() const {
  return !stages.empty() && std::all_of(stages.begin(), stages.end(), [](const ModularStage& s) { return s.ok; });
}

ModularReport modular_pipeline(const RationalMatrix& a, const Rational& k, const GadgetWiring& wiring,
                               const mpz_class& lambda_override) {
  if (!k.is_integer()) throw InvalidArgument("modular pipeline needs an integer k");
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (a(i, j) != 0 && a(i, j) != 1) throw InvalidArgument("modular pipeline needs a {0,1} matrix");
  const WeightedDigraph g = WeightedDigraph::from_matrix(a);
  ModularReport r;
  r.k = k;
  r.n = g.vertex_count();
  InterpolationTrace trace;
  const StratifiedWeights sw = recover_stratified(g, k, wiring, &trace);
  (void)sw;
  const int n = r.n;
  r.hamiltonian = hamiltonian(g);
  r.w_star = trace.ham_weights;
  r.sizes = trace.sizes;
  const Rational two_k = 2 * k;

  {
    Rational sum(0);
    for (int i = 0; i < n; ++i) sum += r.w_star[i] * trace.values[i];
    r.stages.push_back({"interpolation", sum == r.hamiltonian,
                        "sum_i w*_i Ferm(P_i A) = " + sum.str() + ", Ham(A) = " + r.hamiltonian.str()});
  }

  // P'_i = 2k P_i.
  std::vector<GadgetedGraph> p1(n);
  std::vector<Rational> ferm_p1(n);
  {
    bool ok = true;
    std::string detail;
    for (int i = 0; i < n; ++i) {
      p1[i] = replicate_tracked(g, i + 1, wiring);
      p1[i].graph = map_weights(p1[i].graph, [&](const Rational& w) { return w * two_k; });
      for (const auto& [e, w] : p1[i].graph.edge_map()) ok = ok && w.is_integer();
      ferm_p1[i] = gadgeted_fermionant(p1[i], k);
      const bool match = ferm_p1[i] == pow(two_k, r.sizes[i]) * trace.values[i];
      ok = ok && match;
      detail += (i ? "; " : "") + std::string("n_") + std::to_string(i + 1) + "=" + std::to_string(r.sizes[i]) +
                (match ? " scaled" : " MISMATCH");
    }
    r.stages.push_back({"integer-scaling", ok, detail});
  }

  const int nn = r.sizes.back();
  r.omega = 1;
  for (const Rational& w : r.w_star) r.omega *= w.denominator();
  {
    Rational rhs(0);
    for (int i = 0; i < n; ++i) {
      r.w_check.push_back(to_integer(r.w_star[i] * Rational(r.omega), "omega * w*_i"));
      rhs += Rational(r.w_check[i]) * pow(two_k, nn - r.sizes[i]) * ferm_p1[i];
    }
    const Rational lhs = r.hamiltonian * pow(two_k, nn) * Rational(r.omega);
    r.stages.push_back({"exact-identity", lhs == rhs, "lhs = " + lhs.str() + ", rhs = " + rhs.str()});
  }

  {
    Rational bound(0);
    for (int i = 0; i < n; ++i) {
      mpz_class fact;
      mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(r.sizes[i]));
      bound += abs(r.w_star[i]) * Rational(fact) * pow(abs(two_k), 2L * r.sizes[i]);
    }
    r.bound = floor(bound);
    if (lambda_override != 0 && Rational(lambda_override) <= bound)
      throw InvalidArgument("Lambda=" + lambda_override.get_str() + " is not above the bound " + bound.str());
    r.lambda = lambda_override != 0 ? lambda_override : mpz_class(r.bound + 1);
    r.stages.push_back({"modulus", Rational(r.lambda) > bound,
                        "Lambda = " + r.lambda.get_str() + " > bound " + bound.str()});
  }

  // P''_i: -m -> (Lambda-1)m, reduced mod Lambda.
  const mpz_class lambda = r.lambda;
  std::vector<GadgetedGraph> p2(n);
  std::vector<Rational> ferm_p2(n);
  {
    bool ok = true;
    for (int i = 0; i < n; ++i) {
      p2[i] = p1[i];
      p2[i].graph = map_weights(p1[i].graph, [&](const Rational& w) {
        if (w >= 0) return w;
        const mpz_class m = -w.numerator();
        return Rational(mpz_class(((lambda - 1) * m) % lambda));
      });
      ferm_p2[i] = gadgeted_fermionant(p2[i], k);
      ok = ok && mod(to_integer(ferm_p2[i], "Ferm(P''_i)") - to_integer(ferm_p1[i], "Ferm(P'_i)"), lambda) == 0;
    }
    r.stages.push_back({"negative-map", ok, "Ferm(P''_i A) == Ferm(P'_i A) mod Lambda for every i"});
  }

  std::vector<Rational> ferm_p3(n);
  {
    bool ok = true;
    std::string detail;
    for (int i = 0; i < n; ++i) {
      const WeightElimination el = eliminate_weights(p2[i].graph, k, lambda);
      bool unit = true;
      for (const auto& [e, w] : el.graph.edge_map()) unit = unit && (w == 0 || w == 1);
      r.gamma_i.push_back(el.gamma);
      r.eliminated_sizes.push_back(el.graph.vertex_count());
      ferm_p3[i] = evaluate_fermionant(el.graph, k, first_vertices((i + 1) * n), 12);
      const bool match = ferm_p3[i] == pow(-k, el.gamma) * ferm_p2[i];
      ok = ok && unit && match && el.census_gamma == el.gamma;
      detail += (i ? "; " : "") + std::string("gamma_") + std::to_string(i + 1) + "=" + std::to_string(el.gamma) +
                " (census " + std::to_string(el.census_gamma) + "), " + std::to_string(el.graph.vertex_count()) +
                " vertices" + (match ? "" : " MISMATCH");
    }
    r.stages.push_back({"weight-elimination", ok, detail});
  }

  r.gamma = *std::max_element(r.gamma_i.begin(), r.gamma_i.end());
  {
    const mpz_class mk = to_integer(-k, "k");
    r.lhs_mod = mod(to_integer(r.hamiltonian, "Ham(A)") * mod_pow(to_integer(two_k, "2k"), nn, lambda) %
                        lambda * mod_pow(mk, r.gamma, lambda) % lambda * r.omega,
                    lambda);
    mpz_class rhs = 0;
    for (int i = 0; i < n; ++i)
      rhs += r.w_check[i] * mod_pow(to_integer(two_k, "2k"), nn - r.sizes[i], lambda) *
             mod_pow(mk, r.gamma - r.gamma_i[i], lambda) % lambda * mod(to_integer(ferm_p3[i], "Ferm(P'''_i)"), lambda);
    r.rhs_mod = mod(rhs, lambda);
    r.stages.push_back({"final-congruence", r.lhs_mod == r.rhs_mod,
                        "lhs = " + r.lhs_mod.get_str() + ", rhs = " + r.rhs_mod.get_str() + " (mod Lambda)"});
  }
  return r;
}

}  // namespace ferm
