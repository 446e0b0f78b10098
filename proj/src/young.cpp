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

#include "ferm/young.hpp"

#include <cctype>
#include <sstream>

#include "ferm/cycle_covers.hpp"
#include "ferm/dense.hpp"
#include "ferm/digraph.hpp"
#include "ferm/errors.hpp"

namespace ferm {

YoungDiagram::YoungDiagram(std::vector<int> rows) : rows_(std::move(rows)) {
  for (size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i] <= 0) throw InvalidArgument("diagram rows must be positive");
    if (i > 0 && rows_[i] > rows_[i - 1]) throw InvalidArgument("diagram rows must be weakly decreasing");
  }
}

int YoungDiagram::weight() const {
  int w = 0;
  for (int r : rows_) w += r;
  return w;
}

std::vector<int> YoungDiagram::column_lengths() const {
  std::vector<int> cols(columns(), 0);
  for (int r : rows_)
    for (int j = 0; j < r; ++j) ++cols[j];
  return cols;
}

std::string YoungDiagram::str() const { return partition().str(); }

YoungDiagram parse_diagram(const std::string& text) {
  std::vector<int> rows;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      const int v = std::stoi(item, &used);
      while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
      if (used != item.size()) throw FormatError("");
      rows.push_back(v);
    } catch (const std::exception&) {
      throw FormatError("diagram: bad row length '" + item + "'");
    }
  }
  if (rows.empty()) throw FormatError("diagram: empty");
  try {
    return YoungDiagram(rows);
  } catch (const InvalidArgument& e) {
    throw FormatError(std::string("diagram: ") + e.what());
  }
}

YoungDiagram two_column(int c1, int c2) {
  if (c2 < 0 || c1 < c2) throw InvalidArgument("two_column needs c1 >= c2 >= 0");
  std::vector<int> rows(c2, 2);
  rows.insert(rows.end(), c1 - c2, 1);
  return YoungDiagram(rows);
}

std::string cols_str(const YoungDiagram& y) {
  if (y.columns() > 2) throw InvalidArgument("cols_str: more than two columns in " + y.str());
  const std::vector<int> c = y.column_lengths();
  return "cols[" + std::to_string(c.empty() ? 0 : c[0]) + "," + std::to_string(c.size() > 1 ? c[1] : 0) + "]";
}

std::vector<SkewHook> skew_hooks(const YoungDiagram& y, int size) {
  if (size < 1) throw InvalidArgument("skew_hooks: size must be >= 1");
  std::vector<SkewHook> out;
  const std::vector<int>& rows = y.rows();
  const std::vector<int> cols = y.column_lengths();
  const int nr = y.row_count();
  // A border strip is determined by the cell whose hook it traces: it runs
  // from the end of row i down to row i + leg, column j.
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < rows[i]; ++j) {
      const int arm = rows[i] - 1 - j;
      const int leg = cols[j] - 1 - i;
      if (arm + leg + 1 != size) continue;
      SkewHook h;
      h.height = leg;
      std::vector<int> rest = rows;
      for (int r = i; r <= i + leg; ++r) {
        const int from = r < i + leg ? rows[r + 1] - 1 : j;
        for (int c = from; c < rows[r]; ++c) h.cells.emplace_back(r, c);
        rest[r] = from;
      }
      while (!rest.empty() && rest.back() == 0) rest.pop_back();
      h.remainder = YoungDiagram(rest);
      out.push_back(std::move(h));
    }
  return out;
}

namespace {

using CharKey = std::pair<std::vector<int>, std::vector<int>>;

long long mn_memo(const std::vector<int>& rows, const std::vector<int>& type, size_t from,
                  std::map<CharKey, long long>& memo) {
  if (from == type.size()) return rows.empty() ? 1 : 0;
  CharKey key{rows, std::vector<int>(type.begin() + static_cast<long>(from), type.end())};
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  long long total = 0;
  for (const SkewHook& h : skew_hooks(YoungDiagram(rows), type[from])) {
    const long long rest = mn_memo(h.remainder.rows(), type, from + 1, memo);
    total += (h.height % 2 == 0) ? rest : -rest;
  }
  memo.emplace(std::move(key), total);
  return total;
}

std::map<CharKey, long long>& character_memo() {
  // Per-thread: concurrent callers never share a table.
  thread_local std::map<CharKey, long long> memo;
  return memo;
}

}  // namespace

long long mn_character(const YoungDiagram& y, const Partition& t) {
  if (y.weight() != t.weight())
    throw InvalidArgument("mn_character: diagram " + y.str() + " and type " + t.str() + " differ in weight");
  return mn_memo(y.rows(), t.parts(), 0, character_memo());
}

long long mn_character_in_order(const YoungDiagram& y, const std::vector<int>& cycles) {
  int w = 0;
  for (int c : cycles) {
    if (c < 1) throw InvalidArgument("mn_character_in_order: cycle lengths must be positive");
    w += c;
  }
  if (w != y.weight()) throw InvalidArgument("mn_character_in_order: weight mismatch");
  if (cycles.empty()) return 1;
  long long total = 0;
  const std::vector<int> rest(cycles.begin() + 1, cycles.end());
  for (const SkewHook& h : skew_hooks(y, cycles[0])) {
    const long long v = mn_character_in_order(h.remainder, rest);
    total += (h.height % 2 == 0) ? v : -v;
  }
  return total;
}

mpz_class diagram_dimension(const YoungDiagram& y) {
  const std::vector<int> cols = y.column_lengths();
  mpz_class num = 1, den = 1;
  for (int m = 2; m <= y.weight(); ++m) num *= m;
  for (int i = 0; i < y.row_count(); ++i)
    for (int j = 0; j < y.rows()[i]; ++j) den *= (y.rows()[i] - 1 - j) + (cols[j] - 1 - i) + 1;
  return num / den;
}

mpz_class class_size(const Partition& t) {
  mpz_class num = 1, z = 1;
  for (int m = 2; m <= t.weight(); ++m) num *= m;
  std::map<int, int> mult;
  for (int p : t.parts()) ++mult[p];
  for (const auto& [len, m] : mult)
    for (int i = 1; i <= m; ++i) z *= mpz_class(len) * i;
  return num / z;
}

std::map<std::vector<int>, Rational> class_weights_sparse(const RationalMatrix& a, int max_dim) {
  if (a.rows() != a.cols() || a.rows() < 1) throw InvalidArgument("matrix must be square with n >= 1");
  const WeightedDigraph g = WeightedDigraph::from_matrix(a);
  std::map<std::vector<int>, Rational> out;
  const int n = static_cast<int>(a.rows());
  for_each_cycle_cover(g, max_dim, [&](const std::vector<int>& succ) {
    Rational w(1);
    for (int i = 0; i < n; ++i) w *= a(i, succ[i]);
    out[cycle_lengths_raw(succ)] += w;
  });
  return out;
}

Rational immanant_from_weights(const YoungDiagram& y, const std::map<std::vector<int>, Rational>& weights) {
  Rational total(0);
  for (const auto& [type, w] : weights) {
    if (w.is_zero()) continue;
    const long long chi = mn_character(y, Partition(type));
    if (chi != 0) total += Rational(chi) * w;
  }
  return total;
}

Rational immanant(const YoungDiagram& y, const RationalMatrix& a) {
  if (a.rows() != a.cols() || a.rows() < 1) throw InvalidArgument("matrix must be square with n >= 1");
  if (y.weight() != a.rows())
    throw InvalidArgument("immanant: diagram " + y.str() + " has weight " + std::to_string(y.weight()) +
                          ", matrix is " + std::to_string(a.rows()) + "x" + std::to_string(a.rows()));
  return immanant_from_weights(y, class_weights(a));
}

Rational immanant_sparse(const YoungDiagram& y, const RationalMatrix& a, int max_dim) {
  if (y.weight() != a.rows())
    throw InvalidArgument("immanant: diagram " + y.str() + " does not match a " + std::to_string(a.rows()) +
                          "x" + std::to_string(a.cols()) + " matrix");
  return immanant_from_weights(y, class_weights_sparse(a, max_dim));
}

std::vector<YoungDiagram> diagrams_with_max_columns(int n, int k) {
  std::vector<YoungDiagram> out;
  if (n < 0) throw InvalidArgument("diagrams_with_max_columns: n must be >= 0");
  if (n == 0) return {YoungDiagram()};
  for (const Partition& p : partitions_of(n))
    if (p[0] <= k) out.emplace_back(p);
  return out;
}

Rational DecompositionTable::at(const YoungDiagram& y) const {
  auto it = coeffs.find(y);
  return it == coeffs.end() ? Rational(0) : it->second;
}

DecompositionTable decomposition_coeffs(int n, const Rational& k) {
  check_enumeration_cap(n, "decomposition_coeffs");
  DecompositionTable table;
  table.n = n;
  table.k = k;
  const std::vector<Partition> types = partitions_of(n);
  const Rational nfact(mpz_class(static_cast<unsigned long>(factorial(n))));
  for (const Partition& lam : types) {
    const YoungDiagram y(lam);
    Rational sum(0);
    for (const Partition& t : types) {
      const long long chi = mn_character(y, t);
      if (chi == 0) continue;
      sum += Rational(class_size(t)) * pow(-k, t.length()) * Rational(chi);
    }
    sum /= nfact;
    if (!sum.is_zero()) table.coeffs.emplace(y, sum);
  }
  return table;
}

Rational content_product_coeff(const YoungDiagram& y, const Rational& k) {
  Rational prod(diagram_dimension(y));
  for (int i = 0; i < y.row_count(); ++i)
    for (int j = 0; j < y.rows()[i]; ++j) prod *= -k + Rational(j - i);
  return prod / Rational(mpz_class(static_cast<unsigned long>(factorial(y.weight()))));
}

DecompositionReport verify_decomposition(const RationalMatrix& a, const Rational& k) {
  DecompositionReport r;
  r.n = static_cast<int>(a.rows());
  r.k = k;
  r.fermionant_plain = fermionant(a, k, Convention::kPlain);
  r.fermionant_signed = fermionant(a, k, Convention::kSigned);
  const DecompositionTable table = decomposition_coeffs(r.n, k);
  const auto weights = class_weights(a);
  for (const auto& [y, d] : table.coeffs) r.expansion += d * immanant_from_weights(y, weights);
  r.plain_holds = r.fermionant_plain == r.expansion;
  r.signed_holds = r.fermionant_signed == r.expansion;
  r.flipped_holds = r.fermionant_signed == (r.n % 2 == 0 ? r.expansion : -r.expansion);
  if (k.is_integer() && k.sign() > 0) {
    const long kk = k.numerator().get_si();
    for (const auto& [y, d] : table.coeffs)
      if (y.columns() > kk) r.support_ok = false;
  }
  return r;
}

}  // namespace ferm
