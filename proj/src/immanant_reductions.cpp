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

#include "ferm/immanant_reductions.hpp"

#include <Eigen/LU>
#include <cmath>
#include <set>
#include <sstream>

#include "ferm/dense.hpp"
#include "ferm/errors.hpp"

namespace ferm {

namespace {

int ceil_half(int n) { return (n + 1) / 2; }

std::string shape_str(const YoungDiagram& y) { return y.columns() <= 2 ? cols_str(y) : y.str(); }

void add_to(Expansion& e, const YoungDiagram& y, const Rational& c) {
  if (c.is_zero()) return;
  Rational& slot = e[y];
  slot += c;
  if (slot.is_zero()) e.erase(y);
}

std::string term_label(const OracleTerm& t) { return t.role + "_" + std::to_string(t.index); }

// Solves sum_u x_u unknowns[u][target] = rhs[target] for every target. The
// system must be square and invertible.
std::vector<Rational> solve_terms(const std::vector<YoungDiagram>& targets, const std::vector<Expansion>& unknowns,
                                  const std::vector<std::string>& labels, const Expansion& rhs,
                                  std::vector<std::string>* equations) {
  const int t = static_cast<int>(targets.size());
  const int u = static_cast<int>(unknowns.size());
  if (t != u)
    throw SingularSystem("coefficient system is " + std::to_string(t) + " equations by " + std::to_string(u) +
                         " unknowns");
  RationalMatrix m = RationalMatrix::Zero(t, u);
  RationalVector b(t);
  for (int i = 0; i < t; ++i) {
    std::ostringstream eq;
    eq << shape_str(targets[i]) << ":";
    bool any = false;
    for (int j = 0; j < u; ++j) {
      auto it = unknowns[j].find(targets[i]);
      if (it == unknowns[j].end()) continue;
      m(i, j) = it->second;
      eq << ' ' << (it->second.sign() > 0 ? "+" : "") << it->second << "*" << labels[j];
      any = true;
    }
    auto r = rhs.find(targets[i]);
    b(i) = r == rhs.end() ? Rational(0) : r->second;
    if (!any) eq << " 0";
    eq << " = " << b(i);
    if (equations) equations->push_back(eq.str());
  }
  if (t == 0) return {};
  Eigen::FullPivLU<RationalMatrix> lu(m);
  if (!lu.isInvertible()) throw SingularSystem("coefficient system is singular (rank " + std::to_string(lu.rank()) + ")");
  const RationalVector x = lu.solve(b);
  return std::vector<Rational>(x.data(), x.data() + x.size());
}

Rational oracle_value(const OracleTerm& t, const RationalMatrix& a, const ImmanantOracle& oracle) {
  if (t.padding == 0) return oracle(t.shape, a);
  return oracle(t.shape, pad_with_cycle(a, t.padding).composite);
}

bool wanted(const std::string& role, const std::vector<std::string>& roles) {
  if (roles.empty()) return true;
  for (const auto& r : roles)
    if (r == role) return true;
  return false;
}

// Evaluates an expansion in the im_Y(A) basis using one class-weight table.
Rational evaluate_expansion(const Expansion& e, const std::map<std::vector<int>, Rational>& weights) {
  Rational total(0);
  for (const auto& [y, c] : e) total += c * immanant_from_weights(y, weights);
  return total;
}

RationalMatrix cycle_matrix(int l) {
  RationalMatrix c = RationalMatrix::Zero(l, l);
  for (int i = 0; i < l; ++i) c(i, (i + 1) % l) = Rational(1);
  return c;
}

Rational sign_power(int e) { return (e % 2 == 0) ? Rational(1) : Rational(-1); }

}  // namespace

PaddedMatrix pad_with_cycle(const RationalMatrix& a, int l) {
  if (l < 1) throw InvalidArgument("pad_with_cycle: cycle length must be >= 1");
  if (a.rows() != a.cols()) throw InvalidArgument("pad_with_cycle: matrix must be square");
  const int n = static_cast<int>(a.rows());
  PaddedMatrix p;
  p.base = a;
  p.cycle_length = l;
  p.composite = RationalMatrix::Zero(n + l, n + l);
  p.composite.topLeftCorner(n, n) = a;
  for (int i = 0; i < l; ++i) p.composite(n + i, n + (i + 1) % l) = Rational(1);
  return p;
}

Expansion padded_expansion(const YoungDiagram& y, int s) {
  Expansion e;
  if (s == 0) {
    e.emplace(y, Rational(1));
    return e;
  }
  for (const SkewHook& h : skew_hooks(y, s)) add_to(e, h.remainder, sign_power(h.height));
  return e;
}

std::string expansion_str(const Expansion& e) {
  if (e.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [y, c] : e) {
    if (!first) os << ' ';
    os << (c.sign() > 0 && !first ? "+" : "") << c << "*" << shape_str(y);
    first = false;
  }
  return os.str();
}

ImmanantOracle brute_force_oracle() {
  return [](const YoungDiagram& y, const RationalMatrix& m) { return immanant_sparse(y, m, 24); };
}

Expansion CoefficientLedger::expansion() const {
  Expansion e;
  for (const auto& t : oracle_terms)
    for (const auto& [y, c] : padded_expansion(t.shape, t.padding)) add_to(e, y, t.coeff * c);
  for (const auto& t : direct_terms) add_to(e, t.shape, t.coeff);
  return e;
}

Rational CoefficientLedger::evaluate(const RationalMatrix& a, const ImmanantOracle& oracle,
                                     const std::vector<std::string>& roles) const {
  Rational total(0);
  for (const auto& t : oracle_terms)
    if (wanted(t.role, roles) && !t.coeff.is_zero()) total += t.coeff * oracle_value(t, a, oracle);
  for (const auto& t : direct_terms) {
    if (!wanted(t.role, roles) || t.coeff.is_zero()) continue;
    total += t.coeff * (t.role == "det" ? determinant_bareiss(a) : immanant(t.shape, a));
  }
  return total;
}

std::string CoefficientLedger::str() const {
  std::ostringstream os;
  os << "ledger n=" << n << " delta=" << delta << '\n';
  for (const auto& t : oracle_terms)
    os << "  " << term_label(t) << " = " << t.coeff << "  on " << shape_str(t.shape) << " padded by " << t.padding
       << '\n';
  for (const auto& t : direct_terms) os << "  " << t.role << " " << shape_str(t.shape) << " = " << t.coeff << '\n';
  for (const auto& e : equations) os << "  eq " << e << '\n';
  return os.str();
}

Expansion ferm2_target(const DecompositionTable& d) {
  Expansion e;
  for (int j = ceil_half(d.n); j <= d.n; ++j) add_to(e, two_column(j, d.n - j), d.at(two_column(j, d.n - j)));
  return e;
}

namespace {

void check_table(int n, const DecompositionTable& d) {
  if (d.n != n || d.k != Rational(2)) throw InvalidArgument("coefficient ledger needs the decomposition table for k=2");
}

// Solves for every oracle term plus the given direct terms (whose coeff is
// unknown) against target on the listed shapes, and stores the result.
void solve_ledger(CoefficientLedger& led, std::vector<DirectTerm> unknown_direct, const std::vector<YoungDiagram>& targets,
                  const Expansion& target) {
  std::vector<Expansion> cols;
  std::vector<std::string> labels;
  for (const auto& t : led.oracle_terms) {
    cols.push_back(padded_expansion(t.shape, t.padding));
    labels.push_back(term_label(t));
  }
  for (const auto& t : unknown_direct) {
    cols.push_back({{t.shape, Rational(1)}});
    labels.push_back(t.role);
  }
  const std::vector<Rational> x = solve_terms(targets, cols, labels, target, &led.equations);
  size_t i = 0;
  for (auto& t : led.oracle_terms) {
    t.coeff = x[i++];
    if (t.role == "alpha") led.alpha[t.index] = t.coeff;
    if (t.role == "a") led.a[t.index] = t.coeff;
    if (t.role == "b") led.b[t.index] = t.coeff;
  }
  for (auto& t : unknown_direct) {
    t.coeff = x[i++];
    if (t.role == "det") led.det_coeff = t.coeff;
    led.direct_terms.push_back(t);
  }
}

}  // namespace

CoefficientLedger alpha_coeffs(int n, const DecompositionTable& d) {
  if (n < 2) throw InvalidArgument("alpha_coeffs: n must be >= 2");
  check_table(n, d);
  CoefficientLedger led;
  led.n = n;
  for (int l = ceil_half(n); l <= n - 1; ++l) led.oracle_terms.push_back({"alpha", l, two_column(l, l), 2 * l - n, 0});
  std::vector<YoungDiagram> targets;
  for (int j = ceil_half(n); j <= n; ++j) targets.push_back(two_column(j, n - j));
  solve_ledger(led, {{"det", two_column(n, 0), 0}}, targets, ferm2_target(d));
  if (led.expansion() != ferm2_target(d)) throw Error("alpha_coeffs: solved ledger does not reproduce the target");
  return led;
}

Rational ferm2_via_square_immanants(const RationalMatrix& a, const ImmanantOracle& oracle, int* calls) {
  if (a.rows() != a.cols()) throw InvalidArgument("ferm2_via_square_immanants: matrix must be square");
  const int n = static_cast<int>(a.rows());
  if (n == 1) return -Rational(2) * a(0, 0);
  const CoefficientLedger led = alpha_coeffs(n, decomposition_coeffs(n, 2));
  int count = 0;
  const ImmanantOracle squares_only = [&](const YoungDiagram& y, const RationalMatrix& m) {
    const std::vector<int> c = y.column_lengths();
    if (c.size() != 2 || c[0] != c[1]) throw InvalidArgument("square oracle called on " + y.str());
    ++count;
    return oracle(y, m);
  };
  const Rational v = led.evaluate(a, squares_only);
  if (calls) *calls = count;
  return v;
}

CoefficientLedger constant_delta_ledger(int n, int delta, const DecompositionTable& d) {
  if (delta < 1) throw InvalidArgument("constant_delta_ledger: delta must be >= 1");
  check_table(n, d);
  const int lo = ceil_half(n), hi = n - delta - 1;
  if (hi < lo)
    throw InvalidArgument("constant_delta_ledger: n=" + std::to_string(n) + " leaves no band below the residual for delta=" +
                          std::to_string(delta));
  CoefficientLedger led;
  led.n = n;
  led.delta = delta;
  for (int s = delta; s >= 0; --s) {
    if ((n - delta + s) % 2 != 0) continue;
    const int c = (n - delta + s) / 2;
    if (c + delta - s > hi) continue;
    led.oracle_terms.push_back({"b", s, two_column(c + delta, c), s, 0});
  }
  for (int l = (n + delta) / 2 + 1; l <= hi; ++l)
    led.oracle_terms.push_back({"a", l, two_column(l + 1 + delta, l + 1), 2 * l - n + delta + 2, 0});
  std::vector<YoungDiagram> targets;
  for (int j = lo; j <= hi; ++j) targets.push_back(two_column(j, n - j));
  const Expansion target = ferm2_target(d);
  solve_ledger(led, {}, targets, target);
  const Expansion chains = led.expansion();
  for (int j = hi + 1; j <= n; ++j) {
    const YoungDiagram y = two_column(j, n - j);
    auto t = target.find(y);
    auto c = chains.find(y);
    const Rational r = (t == target.end() ? Rational(0) : t->second) - (c == chains.end() ? Rational(0) : c->second);
    if (r.is_zero()) continue;
    led.residual[j] = r;
    led.direct_terms.push_back({"residual", y, r});
  }
  return led;
}

Report branch_identity(const RationalMatrix& a, int l) {
  Report rep;
  const int n = static_cast<int>(a.rows());
  const int d = 2 * l - n;
  const std::string name = "branch n=" + std::to_string(n) + " l=" + std::to_string(l);
  if (d < 1 || l > n) throw InvalidArgument("branch_identity: need n/2 < l <= n");
  const YoungDiagram sq = two_column(l, l);
  const Expansion e = padded_expansion(sq, d);
  Expansion expected;
  add_to(expected, two_column(l, n - l), sign_power(d - 1));
  if (l - 1 >= n - l + 1) add_to(expected, two_column(l - 1, n - l + 1), sign_power(d));
  rep.add(name + " strips", e == expected, expansion_str(e));
  const Rational lhs = brute_force_oracle()(sq, pad_with_cycle(a, d).composite);
  const Rational rhs = evaluate_expansion(e, class_weights(a));
  rep.add(name + " values", lhs == rhs, lhs.str() + " vs " + rhs.str(), "matrix=" + inline_matrix(a));
  return rep;
}

int two_column_base_size(int k1, int k2) {
  if (k2 < 0 || k1 < k2 || k1 < 1) throw InvalidArgument("two-column shape needs k1 >= k2 >= 0 and k1 >= 1");
  const int delta = k1 - k2;
  if (k2 == 0) return 0;
  if (delta == 0) return k2 + 1;
  if (k1 > 2 * k2) return 2 * k2;
  return 2 * delta;
}

Report two_column_identities(int k1, int k2, const RationalMatrix& a) {
  Report rep;
  const int base = two_column_base_size(k1, k2);
  const int delta = k1 - k2;
  const std::string shape = "cols[" + std::to_string(k1) + "," + std::to_string(k2) + "]";
  const std::string witness = "k1=" + std::to_string(k1) + " k2=" + std::to_string(k2) + " matrix=" + inline_matrix(a);
  const ImmanantOracle oracle = brute_force_oracle();
  if (k2 == 0) {
    // A single column is the determinant; padding by a k1-cycle leaves the
    // empty diagram with sign (-1)^(k1-1).
    const Rational v = oracle(two_column(k1, 0), cycle_matrix(k1));
    rep.add(shape + " single column", v == sign_power(k1 - 1), v.str());
    return rep;
  }
  if (a.rows() != base)
    throw InvalidArgument(shape + " identities run on " + std::to_string(base) + "x" + std::to_string(base) + " bases");
  if (delta == 0) {
    rep.note(shape + ": square route at n=" + std::to_string(base) + " (squares up to cols[" + std::to_string(k2) + "," +
             std::to_string(k2) + "])");
    const Rational via = ferm2_via_square_immanants(a, oracle);
    const Rational direct = fermionant(a, Rational(2), Convention::kPlain);
    rep.add(shape + " square route", via == direct, via.str() + " vs " + direct.str(), witness);
    return rep;
  }
  if (k1 > 2 * k2) {
    const Expansion e = padded_expansion(two_column(k1, k2), delta);
    const Expansion expected{{two_column(k2, k2), sign_power(delta - 1)}};
    rep.add(shape + " single strip", e == expected, expansion_str(e));
    const Rational lhs = oracle(two_column(k1, k2), pad_with_cycle(a, delta).composite);
    const Rational rhs = sign_power(delta - 1) * immanant(two_column(k2, k2), a);
    rep.add(shape + " single strip values", lhs == rhs, lhs.str() + " vs " + rhs.str(), witness);
    return rep;
  }
  if (k2 != delta)
    rep.note(shape + ": row removal to cols[" + std::to_string(2 * delta) + "," + std::to_string(delta) +
             "] is an external result, assumed");
  const YoungDiagram pair = two_column(2 * delta, delta);
  const Expansion e = padded_expansion(pair, delta);
  const Expansion expected{{two_column(delta, delta), sign_power(delta - 1)},
                           {two_column(2 * delta, 0), sign_power(delta - 1)}};
  rep.add(shape + " pair strips", e == expected, expansion_str(e));
  const Rational det = determinant_bareiss(a);
  rep.add(shape + " single column is det", immanant(two_column(2 * delta, 0), a) == det, det.str(), witness);
  const Rational lhs = oracle(pair, pad_with_cycle(a, delta).composite);
  const Rational rhs = sign_power(delta - 1) * (immanant(two_column(delta, delta), a) + det);
  rep.add(shape + " pair values", lhs == rhs, lhs.str() + " vs " + rhs.str(), witness);
  return rep;
}

Report constant_delta_identities(int n, int delta, const RationalMatrix& a) {
  Report rep;
  const std::string tag = "n=" + std::to_string(n) + " delta=" + std::to_string(delta);
  const std::string witness = tag + " matrix=" + inline_matrix(a);
  if (a.rows() != n) throw InvalidArgument("constant_delta_identities: matrix must be " + std::to_string(n) + "x" + std::to_string(n));
  const DecompositionTable d = decomposition_coeffs(n, 2);
  CoefficientLedger led;
  try {
    led = constant_delta_ledger(n, delta, d);
  } catch (const SingularSystem& e) {
    rep.add(tag + " ledger", false, e.what(), witness);
    return rep;
  }
  rep.add(tag + " ledger", true, std::to_string(led.a.size()) + " a, " + std::to_string(led.b.size()) + " b, " +
                                   std::to_string(led.residual.size()) + " residual");
  bool diff_ok = true;
  for (const auto& t : led.oracle_terms) {
    const std::vector<int> c = t.shape.column_lengths();
    diff_ok = diff_ok && c.size() == 2 && c[0] - c[1] == delta;
  }
  rep.add(tag + " oracle shapes keep the column difference", diff_ok);
  bool res_ok = true;
  for (const auto& [j, r] : led.residual) res_ok = res_ok && n - j <= delta;
  rep.add(tag + " residual shapes have at most delta boxes in column 2", res_ok);
  rep.add(tag + " expansion matches Ferm_2", led.expansion() == ferm2_target(d), expansion_str(led.expansion()));

  const ImmanantOracle oracle = brute_force_oracle();
  const auto weights = class_weights(a);
  for (const std::string role : {"a", "b"}) {
    Expansion e;
    for (const auto& t : led.oracle_terms)
      if (t.role == role)
        for (const auto& [y, c] : padded_expansion(t.shape, t.padding)) add_to(e, y, t.coeff * c);
    const Rational lhs = led.evaluate(a, oracle, {role});
    const Rational rhs = evaluate_expansion(e, weights);
    rep.add(tag + " " + role + " chain", lhs == rhs, lhs.str() + " vs " + rhs.str(), witness);
  }
  const Rational total = led.evaluate(a, oracle);
  const Rational ferm = fermionant(a, Rational(2), Convention::kPlain);
  rep.add(tag + " total equals Ferm_2", total == ferm, total.str() + " vs " + ferm.str(), witness);
  return rep;
}

DiagramFamily diagram_family(const std::string& name) {
  auto root = [](int m) { return static_cast<int>(std::ceil(std::sqrt(static_cast<double>(m)) - 1e-9)); };
  if (name == "square") return {name, 2, 0.5, [](int m) { return std::vector<int>{m, m}; }};
  if (name == "bounded") return {name, 2, 0.5, [](int m) { return std::vector<int>{m, 1}; }};
  if (name == "sqrt") return {name, 2, 0.5, [root](int m) { return std::vector<int>{m, root(m)}; }};
  if (name == "three") return {name, 3, 0.5, [root](int m) { return std::vector<int>{m, m, root(m)}; }};
  throw InvalidArgument("unknown diagram family '" + name + "' (square, bounded, sqrt, three)");
}

Report family_reduction_pipeline(const DiagramFamily& family, const std::vector<int>& samples, int trials,
                                 std::uint64_t seed) {
  Report rep;
  const std::string tag = "family " + family.name;
  rep.note("row removal between diagram sizes and column stripping are external results, assumed, never computed");
  if (samples.empty()) throw InvalidArgument("family pipeline needs at least one sample");
  std::vector<std::vector<int>> cols;
  std::set<int> rights, deltas;
  bool grows = true;
  for (int m : samples) {
    std::vector<int> c = family.columns(m);
    if (static_cast<int>(c.size()) > family.max_columns || c.size() < 2)
      throw InvalidArgument(tag + ": member has an unexpected column count");
    int right = 0;
    for (size_t i = 1; i < c.size(); ++i) right += c[i];
    rights.insert(right);
    grows = grows && right >= std::pow(static_cast<double>(m), family.epsilon);
    deltas.insert(c[c.size() - 2] - c.back());
    cols.push_back(std::move(c));
  }
  if (rights.size() == 1) {
    rep.add(tag + " classification", true,
            "VP regime, no reduction attempted (right-hand boxes constant at " + std::to_string(*rights.begin()) + ")");
    return rep;
  }
  rep.add(tag + " right-hand boxes reach m^epsilon", grows);
  Rng rng(seed);
  for (size_t s = 0; s < samples.size(); ++s) {
    const int k1 = cols[s][cols[s].size() - 2], k2 = cols[s].back();
    const int delta = k1 - k2;
    const std::string who = tag + " m=" + std::to_string(samples[s]) + " -> cols[" + std::to_string(k1) + "," +
                            std::to_string(k2) + "]";
    std::string route;
    if (delta == 0)
      route = "square";
    else if (k1 > 2 * k2)
      route = "single strip";
    else
      route = deltas.size() > 1 ? "pair (growing difference)" : "constant difference";
    rep.note(who + ": route " + route);
    if (k1 + k2 > 8) {
      rep.skip(who, "beyond desk scale");
      continue;
    }
    Rng local = rng.split();
    for (int t = 0; t < trials; ++t) {
      const int base = two_column_base_size(k1, k2);
      const RationalMatrix a = base > 0 ? local.matrix(base) : RationalMatrix();
      rep.merge(two_column_identities(k1, k2, a), who);
      if (route == "constant difference") {
        if (delta <= 2)
          rep.merge(constant_delta_identities(6, delta, local.matrix(6)), who);
        else
          rep.skip(who + " constant difference", "delta > 2 is beyond desk scale");
      }
    }
  }
  return rep;
}

}  // namespace ferm
