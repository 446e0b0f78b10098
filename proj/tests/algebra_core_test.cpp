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

#include <set>

#include "ferm/errors.hpp"
#include "ferm/matrix.hpp"
#include "ferm/permutation.hpp"
#include "ferm/random.hpp"
#include "ferm/rational.hpp"

namespace ferm {
namespace {

TEST(RationalTest, ParsesAndCanonicalizes) {
  EXPECT_EQ(Rational::parse("-3/2").str(), "-3/2");
  EXPECT_EQ(Rational::parse("6/4").str(), "3/2");
  EXPECT_EQ(Rational::parse("7").str(), "7");
  EXPECT_EQ(Rational::parse("0/5").str(), "0");
  EXPECT_EQ(Rational::parse("-0").str(), "0");
  EXPECT_EQ(Rational::parse("-4/2").denominator(), 1);
}

TEST(RationalTest, RejectsMalformed) {
  for (const char* bad : {"", "1/", "/2", "1/0", "1.5", "a", "1/-2", "--1", "2 "})
    EXPECT_THROW(Rational::parse(bad), FormatError) << bad;
}

TEST(RationalTest, FieldAxiomsOnRandomTriples) {
  Rng rng(7);
  for (int t = 0; t < 500; ++t) {
    Rational a = rng.rational(), b = rng.rational(), c = rng.rational();
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ((a * b) * c, a * (b * c));
    Rational r = a * b - c;
    EXPECT_EQ(gcd(r.numerator(), r.denominator()), 1);
    EXPECT_GE(r.denominator(), 1);
    if (!b.is_zero()) EXPECT_EQ(a / b * b, a);
  }
}

TEST(RationalTest, PowerAndFloor) {
  EXPECT_EQ(pow(Rational(-2), 3), Rational(-8));
  EXPECT_EQ(pow(Rational(2), -2), Rational::parse("1/4"));
  EXPECT_EQ(pow(Rational::parse("-1/3"), 0), Rational(1));
  EXPECT_EQ(floor(Rational::parse("-7/2")), -4);
  EXPECT_EQ(floor(Rational::parse("7/2")), 3);
  EXPECT_EQ(mod(mpz_class(-3), mpz_class(5)), 2);
  EXPECT_THROW(Rational(1) / Rational(0), InvalidArgument);
}

TEST(PermutationTest, CycleCountExamples) {
  EXPECT_EQ(cycle_count(Permutation::identity(5)), 5);
  EXPECT_EQ(cycle_count(Permutation({2, 3, 1})), 1);
  EXPECT_EQ(cycle_count(Permutation({2, 1, 4, 3})), 2);
}

TEST(PermutationTest, CycleTypeExamples) {
  EXPECT_EQ(cycle_type(Permutation::identity(4)).parts(), (std::vector<int>{1, 1, 1, 1}));
  EXPECT_EQ(cycle_type(Permutation({2, 1, 4, 3})).parts(), (std::vector<int>{2, 2}));
  EXPECT_EQ(cycle_type(Permutation({2, 3, 4, 1})).parts(), (std::vector<int>{4}));
}

TEST(PermutationTest, SignExamples) {
  EXPECT_EQ(sign(Permutation::identity(3)), 1);
  EXPECT_EQ(sign(Permutation({2, 1, 3})), -1);
  EXPECT_EQ(sign(Permutation({2, 3, 1})), 1);
}

TEST(PermutationTest, RejectsNonBijection) {
  EXPECT_THROW(Permutation({1, 1}), InvalidArgument);
  EXPECT_THROW(Permutation({0, 1}), InvalidArgument);
  EXPECT_THROW(Permutation({3, 1}), InvalidArgument);
}

TEST(PermutationTest, EnumerationCountsAndOrder) {
  EXPECT_EQ(permutations(1).size(), 1u);
  auto p3 = permutations(3);
  ASSERT_EQ(p3.size(), 6u);
  EXPECT_EQ(p3.front(), Permutation::identity(3));
  EXPECT_TRUE(std::is_sorted(p3.begin(), p3.end()));
  auto p4 = permutations(4);
  EXPECT_EQ(std::set<Permutation>(p4.begin(), p4.end()).size(), 24u);
}

TEST(PermutationTest, InvariantsOverS5) {
  for (const Permutation& p : permutations(5)) {
    Partition t = cycle_type(p);
    EXPECT_EQ(t.length(), cycle_count(p));
    EXPECT_EQ(t.weight(), 5);
    EXPECT_EQ(sign(p), (5 - cycle_count(p)) % 2 == 0 ? 1 : -1);
  }
}

TEST(PermutationTest, CapRefusesLargeN) {
  int saved = enumeration_cap();
  set_enumeration_cap(4);
  EXPECT_THROW(permutations(5), EnumerationTooLarge);
  set_enumeration_cap(saved);
}

TEST(PartitionTest, PartitionsOfCounts) {
  const int expected[] = {1, 1, 2, 3, 5, 7, 11, 15, 22};
  for (int n = 0; n <= 8; ++n) EXPECT_EQ(static_cast<int>(partitions_of(n).size()), expected[n]);
  EXPECT_EQ(partitions_of(3).front().parts(), (std::vector<int>{3}));
}

TEST(MatrixTest, ReadsAndFormats) {
  std::istringstream in("2\n1 -1/2\n0 3\n");
  RationalMatrix a = read_matrix(in);
  EXPECT_EQ(a(0, 1), Rational::parse("-1/2"));
  EXPECT_EQ(format_matrix(a), "2\n1 -1/2\n0 3\n");
  std::istringstream short_in("2\n1 2 3\n");
  EXPECT_THROW(read_matrix(short_in), FormatError);
  std::istringstream bad("x\n");
  EXPECT_THROW(read_matrix(bad), FormatError);
}

}  // namespace
}  // namespace ferm
