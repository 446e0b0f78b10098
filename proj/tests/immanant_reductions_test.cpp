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

#include "ferm/dense.hpp"
#include "ferm/errors.hpp"
#include "ferm/immanant_reductions.hpp"
#include "ferm/random.hpp"

namespace ferm {
namespace {

TEST(PadTest, CompositeLayout) {
  Rng rng(2);
  const RationalMatrix a = rng.matrix(2);
  const PaddedMatrix p = pad_with_cycle(a, 3);
  ASSERT_EQ(p.composite.rows(), 5);
  EXPECT_EQ(p.composite(2, 3), 1);
  EXPECT_EQ(p.composite(3, 4), 1);
  EXPECT_EQ(p.composite(4, 2), 1);
  EXPECT_EQ(p.composite(0, 3), 0);
  EXPECT_EQ(p.composite(3, 0), 0);
  EXPECT_EQ(p.composite(1, 1), a(1, 1));
  EXPECT_EQ(pad_with_cycle(a, 1).composite(2, 2), 1);
  EXPECT_THROW(pad_with_cycle(a, 0), InvalidArgument);
}

TEST(PadTest, ExpansionMatchesPaddedImmanant) {
  Rng rng(4);
  for (int n = 1; n <= 4; ++n)
    for (int s = 1; s <= 3; ++s)
      for (const Partition& p : partitions_of(n + s)) {
        const YoungDiagram y(p);
        const RationalMatrix a = rng.matrix(n);
        Rational rhs(0);
        for (const auto& [z, c] : padded_expansion(y, s)) rhs += c * immanant(z, a);
        EXPECT_EQ(immanant_sparse(y, pad_with_cycle(a, s).composite), rhs) << y.str() << " s=" << s;
      }
}

TEST(BranchTest, HoldsForFourAndSix) {
  Rng rng(6);
  for (int n : {4, 6})
    for (int l = n / 2 + 1; l < n; ++l)
      for (int t = 0; t < 5; ++t) EXPECT_TRUE(branch_identity(rng.matrix(n), l).ok()) << n << " " << l;
}

TEST(SquareRouteTest, LedgerBoundaryAndShape) {
  for (int n : {4, 6}) {
    const DecompositionTable d = decomposition_coeffs(n, 2);
    const CoefficientLedger led = alpha_coeffs(n, d);
    EXPECT_EQ(led.expansion(), ferm2_target(d));
    EXPECT_EQ(led.det_coeff, d.at(two_column(n, 0)));
    // Only the n-1 square reaches cols[n-1,1]; the strip has d-1 = n-3 rows.
    EXPECT_EQ(led.alpha.at(n - 1) * Rational(n % 2 == 0 ? -1 : 1), d.at(two_column(n - 1, 1)));
    EXPECT_EQ(static_cast<int>(led.alpha.size()), n / 2);
  }
  EXPECT_THROW(alpha_coeffs(4, decomposition_coeffs(4, 3)), InvalidArgument);
}

TEST(SquareRouteTest, EqualsFermTwo) {
  Rng rng(8);
  for (int n = 2; n <= 6; ++n)
    for (int t = 0; t < 3; ++t) {
      const RationalMatrix a = rng.matrix(n);
      int calls = 0;
      EXPECT_EQ(ferm2_via_square_immanants(a, brute_force_oracle(), &calls), fermionant(a, Rational(2), Convention::kPlain));
      EXPECT_EQ(calls, n / 2);
    }
  const RationalMatrix id = identity_matrix(4);
  EXPECT_EQ(ferm2_via_square_immanants(id, brute_force_oracle()), Rational(16));
}

TEST(SquareRouteTest, OracleOnlySeesSquares) {
  Rng rng(9);
  const ImmanantOracle spy = [](const YoungDiagram& y, const RationalMatrix& m) {
    const auto c = y.column_lengths();
    EXPECT_EQ(c.size(), 2u);
    EXPECT_EQ(c[0], c[1]);
    return immanant_sparse(y, m);
  };
  ferm2_via_square_immanants(rng.matrix(5), spy);
}

TEST(TwoColumnTest, AllShapesUpToEightBoxes) {
  Rng rng(10);
  for (int k1 = 1; k1 <= 8; ++k1)
    for (int k2 = 0; k2 <= k1 && k1 + k2 <= 8; ++k2) {
      const int base = two_column_base_size(k1, k2);
      const RationalMatrix a = base > 0 ? rng.matrix(base) : RationalMatrix();
      const Report r = two_column_identities(k1, k2, a);
      EXPECT_TRUE(r.ok()) << r.text();
    }
}

TEST(TwoColumnTest, BaseSizes) {
  EXPECT_EQ(two_column_base_size(5, 2), 4);  // single strip of size 3
  EXPECT_EQ(two_column_base_size(4, 2), 4);  // pair identity with delta 2
  EXPECT_EQ(two_column_base_size(3, 3), 4);  // square route
  EXPECT_EQ(two_column_base_size(4, 0), 0);
  EXPECT_THROW(two_column_base_size(2, 3), InvalidArgument);
  Rng rng(1);
  EXPECT_THROW(two_column_identities(5, 2, rng.matrix(3)), InvalidArgument);
}

TEST(ConstantDeltaTest, LedgersSolveAndChainsHold) {
  Rng rng(12);
  for (int n : {6, 8})
    for (int delta : {1, 2}) {
      const Report r = constant_delta_identities(n, delta, rng.matrix(n));
      EXPECT_TRUE(r.ok()) << r.text();
    }
}

TEST(ConstantDeltaTest, OddSizeAndLargerDelta) {
  Rng rng(13);
  EXPECT_TRUE(constant_delta_identities(7, 1, rng.matrix(7)).ok());
  EXPECT_TRUE(constant_delta_identities(7, 2, rng.matrix(7)).ok());
  EXPECT_TRUE(constant_delta_identities(8, 3, rng.matrix(8)).ok());
  EXPECT_THROW(constant_delta_ledger(6, 3, decomposition_coeffs(6, 2)), InvalidArgument);
}

TEST(FamilyTest, Routes) {
  const Report sq = family_reduction_pipeline(diagram_family("square"), {2, 3, 4}, 1, 1);
  EXPECT_TRUE(sq.ok());
  EXPECT_GT(sq.count(Status::kPass), 1);
  const Report bounded = family_reduction_pipeline(diagram_family("bounded"), {2, 3, 4, 5}, 1, 1);
  ASSERT_EQ(bounded.checks().size(), 1u);
  EXPECT_NE(bounded.checks()[0].detail.find("no reduction attempted"), std::string::npos);
  const Report root = family_reduction_pipeline(diagram_family("sqrt"), {2, 3, 4, 5, 6, 7}, 1, 1);
  EXPECT_TRUE(root.ok());
  bool pair_route = false;
  for (const auto& n : root.notes()) pair_route = pair_route || n.find("route pair") != std::string::npos;
  EXPECT_TRUE(pair_route);
  EXPECT_THROW(diagram_family("ziggurat"), InvalidArgument);
}

}  // namespace
}  // namespace ferm
