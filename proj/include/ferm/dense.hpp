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

#ifndef FERM_DENSE_HPP_
#define FERM_DENSE_HPP_

// Evaluators over dense square matrices, templated on the scalar type.

#include <Eigen/Core>
#include <map>
#include <utility>
#include <vector>

#include "ferm/errors.hpp"
#include "ferm/permutation.hpp"

namespace ferm {

enum class Convention { kPlain, kSigned };

namespace internal {

template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived>& a) {
  if (a.rows() != a.cols() || a.rows() < 1) throw InvalidArgument("matrix must be square with n >= 1");
}

template <typename Scalar>
Scalar ipow(const Scalar& base, int e) {
  Scalar r(1);
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace internal

// Sum over S_n of (-k)^{c(pi)} prod A(i, pi(i)); signed multiplies by (-1)^n.
// Plain permutation enumeration, subject to the enumeration cap.
template <typename Derived>
typename Derived::Scalar fermionant(const Eigen::MatrixBase<Derived>& a,
                                    const typename Derived::Scalar& k, Convention convention) {
  using Scalar = typename Derived::Scalar;
  internal::require_square(a);
  const int n = static_cast<int>(a.rows());
  std::vector<Scalar> powers(n + 1);
  powers[0] = Scalar(1);
  for (int i = 1; i <= n; ++i) powers[i] = powers[i - 1] * (-k);
  Scalar total(0);
  for_each_permutation(n, [&](const std::vector<int>& p) {
    Scalar prod(1);
    for (int i = 0; i < n; ++i) {
      const Scalar& x = a(i, p[i]);
      if (x == Scalar(0)) return;
      prod *= x;
    }
    total += powers[cycle_count_raw(p)] * prod;
  });
  if (convention == Convention::kSigned && n % 2 == 1) total = -total;
  return total;
}

// Ryser inclusion-exclusion with Gray-code subset order, O(2^n n).
template <typename Derived>
typename Derived::Scalar permanent_ryser(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  internal::require_square(a);
  const int n = static_cast<int>(a.rows());
  if (n > 30) throw EnumerationTooLarge("permanent_ryser: n > 30");
  std::vector<Scalar> row_sum(n, Scalar(0));
  Scalar total(0);
  unsigned long gray = 0;
  const unsigned long limit = 1ul << n;
  for (unsigned long s = 1; s < limit; ++s) {
    unsigned long next = s ^ (s >> 1);
    unsigned long flip = next ^ gray;
    int col = __builtin_ctzl(flip);
    bool added = (next & flip) != 0;
    for (int i = 0; i < n; ++i) {
      if (added)
        row_sum[i] += a(i, col);
      else
        row_sum[i] -= a(i, col);
    }
    gray = next;
    Scalar prod(1);
    for (int i = 0; i < n && !(prod == Scalar(0)); ++i) prod *= row_sum[i];
    int size = __builtin_popcountl(gray);
    if ((n - size) % 2 == 0)
      total += prod;
    else
      total -= prod;
  }
  return total;
}

// Bareiss fraction-free elimination with row pivoting. Every division is
// exact, so the routine is valid for integer and rational scalars alike.
template <typename Derived>
typename Derived::Scalar determinant_bareiss(const Eigen::MatrixBase<Derived>& a_in) {
  using Scalar = typename Derived::Scalar;
  internal::require_square(a_in);
  const int n = static_cast<int>(a_in.rows());
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> m = a_in;
  Scalar prev(1);
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m(k, k) == Scalar(0)) {
      int pivot = -1;
      for (int i = k + 1; i < n; ++i)
        if (!(m(i, k) == Scalar(0))) {
          pivot = i;
          break;
        }
      if (pivot < 0) return Scalar(0);
      m.row(k).swap(m.row(pivot));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      m(i, k) = Scalar(0);
    }
    prev = m(k, k);
  }
  return sign > 0 ? Scalar(m(n - 1, n - 1)) : Scalar(-m(n - 1, n - 1));
}

// Total weight of the permutations of each cycle type, enumerating only
// permutations supported on nonzero entries. Cycle types are stored as
// descending length lists.
template <typename Derived>
std::map<std::vector<int>, typename Derived::Scalar> class_weights(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  internal::require_square(a);
  const int n = static_cast<int>(a.rows());
  check_enumeration_cap(n, "class_weights");
  std::vector<std::vector<int>> support(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!(a(i, j) == Scalar(0))) support[i].push_back(j);
  std::map<std::vector<int>, Scalar> out;
  std::vector<int> image(n, -1);
  std::vector<char> used(n, 0);
  std::vector<Scalar> partial(n + 1);
  partial[0] = Scalar(1);
  auto rec = [&](auto&& self, int i) -> void {
    if (i == n) {
      out[cycle_lengths_raw(image)] += partial[n];
      return;
    }
    for (int j : support[i]) {
      if (used[j]) continue;
      used[j] = 1;
      image[i] = j;
      partial[i + 1] = partial[i] * a(i, j);
      self(self, i + 1);
      used[j] = 0;
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace ferm

#endif  // FERM_DENSE_HPP_
