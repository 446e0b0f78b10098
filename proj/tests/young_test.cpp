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

#include <algorithm>
#include <thread>

#include "ferm/dense.hpp"
#include "ferm/errors.hpp"
#include "ferm/random.hpp"
#include "ferm/young.hpp"

namespace ferm {
namespace {

YoungDiagram Y(std::vector<int> rows) { return YoungDiagram(std::move(rows)); }
Partition P(std::vector<int> parts) { return Partition(std::move(parts)); }

TEST(YoungDiagramTest, BasicsAndParsing) {
  const YoungDiagram y = parse_diagram("4,4,2,1");
  EXPECT_EQ(y.weight(), 11);
  EXPECT_EQ(y.columns(), 4);
  EXPECT_EQ(y.column_lengths(), (std::vector<int>{4, 3, 2, 2}));
  EXPECT_EQ(y.str(), "[4,4,2,1]");
  for (const char* bad : {"", "1,2", "0", "3,,1", "a", "2,-1"}) EXPECT_THROW(parse_diagram(bad), FormatError) << bad;
  EXPECT_EQ(two_column(3, 1), Y({2, 1, 1}));
  EXPECT_EQ(cols_str(two_column(3, 1)), "cols[3,1]");
  EXPECT_EQ(cols_str(two_column(4, 0)), "cols[4,0]");
  EXPECT_THROW(two_column(1, 2), InvalidArgument);
}

TEST(SkewHookTest, Examples) {
  // Whole of [2,1] is its only 3-strip, spanning two rows.
  auto h = skew_hooks(Y({2, 1}), 3);
  ASSERT_EQ(h.size(), 1u);
  EXPECT_EQ(h[0].height, 1);
  EXPECT_EQ(h[0].remainder, YoungDiagram());
  h = skew_hooks(Y({5}), 5);
  ASSERT_EQ(h.size(), 1u);
  EXPECT_EQ(h[0].height, 0);
  EXPECT_TRUE(skew_hooks(Y({2, 1}), 4).empty());
  EXPECT_THROW(skew_hooks(Y({2}), 0), InvalidArgument);
}

TEST(SkewHookTest, SquareTwoColumnGivesTwoShapes) {
  for (int n : {4, 5, 6, 7})
    for (int l = n / 2 + 1; l < n; ++l) {
      std::vector<YoungDiagram> got;
      for (const auto& h : skew_hooks(two_column(l, l), 2 * l - n)) got.push_back(h.remainder);
      std::vector<YoungDiagram> want{two_column(l, n - l)};
      if (l - 1 >= n - l + 1) want.push_back(two_column(l - 1, n - l + 1));
      std::sort(got.begin(), got.end());
      std::sort(want.begin(), want.end());
      EXPECT_EQ(got, want) << n << " " << l;
    }
}

TEST(SkewHookTest, StripsAreConnectedBorderCells) {
  for (int n = 1; n <= 7; ++n)
    for (const Partition& p : partitions_of(n)) {
      const YoungDiagram y(p);
      for (int s = 1; s <= n; ++s)
        for (const auto& h : skew_hooks(y, s)) {
          EXPECT_EQ(h.size(), s);
          EXPECT_EQ(h.remainder.weight(), n - s);
          int top = n, bottom = -1;
          for (auto [r, c] : h.cells) {
            EXPECT_TRUE(y.contains(r, c));
            EXPECT_FALSE(h.remainder.contains(r, c));
            EXPECT_FALSE(y.contains(r + 1, c + 1));  // border cell
            top = std::min(top, r);
            bottom = std::max(bottom, r);
          }
          EXPECT_EQ(h.height, bottom - top);
        }
    }
}

TEST(CharacterTest, Examples) {
  EXPECT_EQ(mn_character(Y({2, 1}), P({1, 1, 1})), 2);
  EXPECT_EQ(mn_character(Y({2, 1}), P({2, 1})), 0);
  EXPECT_EQ(mn_character(Y({2, 1}), P({3})), -1);
  EXPECT_THROW(mn_character(Y({2, 1}), P({2})), InvalidArgument);
  EXPECT_EQ(mn_character(YoungDiagram(), Partition()), 1);
}

TEST(CharacterTest, RowAndColumn) {
  for (int n = 1; n <= 7; ++n) {
    const YoungDiagram row({n});
    const YoungDiagram col(std::vector<int>(n, 1));
    for (const Partition& t : partitions_of(n)) {
      EXPECT_EQ(mn_character(row, t), 1);
      EXPECT_EQ(mn_character(col, t), (n - t.length()) % 2 == 0 ? 1 : -1);
    }
  }
}

TEST(CharacterTest, FirstOrthogonality) {
  for (int n = 1; n <= 6; ++n) {
    const auto parts = partitions_of(n);
    for (const auto& a : parts)
      for (const auto& b : parts) {
        mpz_class sum = 0;
        for (const auto& t : parts)
          sum += class_size(t) * static_cast<long>(mn_character(YoungDiagram(a), t)) * static_cast<long>(mn_character(YoungDiagram(b), t));
        EXPECT_EQ(sum, a == b ? mpz_class(static_cast<unsigned long>(factorial(n))) : mpz_class(0));
      }
  }
}

TEST(CharacterTest, DimensionIsPositiveAndMatchesHookFormula) {
  for (int n = 1; n <= 8; ++n)
    for (const auto& p : partitions_of(n)) {
      const long long chi = mn_character(YoungDiagram(p), Partition(std::vector<int>(n, 1)));
      EXPECT_GT(chi, 0);
      EXPECT_EQ(mpz_class(std::to_string(chi)), diagram_dimension(YoungDiagram(p)));
    }
}

TEST(CharacterTest, CycleOrderDoesNotMatter) {
  Rng rng(3);
  for (int n = 2; n <= 7; ++n)
    for (const auto& p : partitions_of(n))
      for (const auto& t : partitions_of(n)) {
        std::vector<int> order = t.parts();
        for (int s = 0; s < 3; ++s) {
          for (size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.uniform(0, static_cast<long>(i) - 1)]);
          EXPECT_EQ(mn_character_in_order(YoungDiagram(p), order), mn_character(YoungDiagram(p), t));
        }
      }
}

TEST(CharacterTest, ConcurrentCallersAgree) {
  std::vector<long long> serial;
  for (const auto& p : partitions_of(7))
    for (const auto& t : partitions_of(7)) serial.push_back(mn_character(YoungDiagram(p), t));
  std::vector<std::vector<long long>> got(4);
  std::vector<std::thread> pool;
  for (int w = 0; w < 4; ++w)
    pool.emplace_back([&, w] {
      for (const auto& p : partitions_of(7))
        for (const auto& t : partitions_of(7)) got[w].push_back(mn_character(YoungDiagram(p), t));
    });
  for (auto& th : pool) th.join();
  for (const auto& g : got) EXPECT_EQ(g, serial);
}

TEST(ImmanantTest, RowColumnAndTwoOne) {
  Rng rng(11);
  for (int n = 1; n <= 6; ++n) {
    const RationalMatrix a = rng.matrix(n);
    EXPECT_EQ(immanant(YoungDiagram({n}), a), permanent_ryser(a));
    EXPECT_EQ(immanant(YoungDiagram(std::vector<int>(n, 1)), a), determinant_bareiss(a));
    EXPECT_EQ(immanant_sparse(YoungDiagram({n}), a), permanent_ryser(a));
  }
  // [2,1]: 2 on the identity class, 0 on transpositions, -1 on 3-cycles.
  const RationalMatrix a = rng.matrix(3);
  Rational want = 2 * a(0, 0) * a(1, 1) * a(2, 2) - a(0, 1) * a(1, 2) * a(2, 0) - a(0, 2) * a(1, 0) * a(2, 1);
  EXPECT_EQ(immanant(Y({2, 1}), a), want);
  EXPECT_THROW(immanant(Y({2, 1}), rng.matrix(4)), InvalidArgument);
  EXPECT_THROW(immanant(Y({10}), rng.matrix(10)), EnumerationTooLarge);
}

TEST(DiagramsTest, MaxColumns) {
  EXPECT_EQ(diagrams_with_max_columns(2, 2), (std::vector<YoungDiagram>{Y({2}), Y({1, 1})}));
  EXPECT_EQ(diagrams_with_max_columns(4, 2), (std::vector<YoungDiagram>{Y({2, 2}), Y({2, 1, 1}), Y({1, 1, 1, 1})}));
  EXPECT_EQ(diagrams_with_max_columns(3, 1), (std::vector<YoungDiagram>{Y({1, 1, 1})}));
}

TEST(DecompositionTest, TwoByTwoAtKTwo) {
  const DecompositionTable d = decomposition_coeffs(2, 2);
  EXPECT_EQ(d.at(Y({2})), 1);
  EXPECT_EQ(d.at(Y({1, 1})), 3);
  EXPECT_EQ(d.coeffs.size(), 2u);
}

TEST(DecompositionTest, SupportHasAtMostKColumns) {
  for (int n = 1; n <= 7; ++n)
    for (int k = 1; k <= 4; ++k)
      for (const auto& [y, c] : decomposition_coeffs(n, k).coeffs) EXPECT_LE(y.columns(), k) << y.str();
}

TEST(DecompositionTest, ContentProductAgrees) {
  for (int n = 1; n <= 6; ++n)
    for (const Rational& k : {Rational(2), Rational(3), Rational(-1), Rational(1, 2)}) {
      const DecompositionTable d = decomposition_coeffs(n, k);
      for (const auto& p : partitions_of(n)) EXPECT_EQ(d.at(YoungDiagram(p)), content_product_coeff(YoungDiagram(p), k));
    }
}

TEST(DecompositionTest, IdentityOnRandomMatrices) {
  Rng rng(19);
  for (int n = 2; n <= 6; ++n)
    for (int k : {2, 3})
      for (int t = 0; t < (n <= 5 ? 10 : 4); ++t) {
        const DecompositionReport r = verify_decomposition(rng.matrix(n), k);
        EXPECT_TRUE(r.ok()) << n << " " << k;
        EXPECT_EQ(r.signed_holds, n % 2 == 0 || r.expansion.is_zero());
      }
}

TEST(DecompositionTest, MinusOneIsPermanent) {
  Rng rng(23);
  for (int n = 1; n <= 5; ++n) {
    const RationalMatrix a = rng.matrix(n);
    const DecompositionReport r = verify_decomposition(a, -1);
    EXPECT_TRUE(r.ok());
    EXPECT_EQ(r.expansion, permanent_ryser(a));
    // Only the single row survives at k = -1.
    const DecompositionTable d = decomposition_coeffs(n, -1);
    EXPECT_EQ(d.coeffs.size(), 1u);
    EXPECT_EQ(d.at(YoungDiagram({n})), 1);
  }
}

}  // namespace
}  // namespace ferm
