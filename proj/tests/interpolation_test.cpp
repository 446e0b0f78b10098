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

#include "ferm/errors.hpp"
#include "ferm/interpolation.hpp"
#include "ferm/random.hpp"

namespace ferm {
namespace {

TEST(Vandermonde, Examples) {
  EXPECT_EQ(vandermonde_solve({Rational(1)}, {Rational(7)}), std::vector<Rational>{Rational(7)});
  // c_1 = 3, c_2 = -5 at nodes -2, 4.
  const std::vector<Rational> nodes{-2, 4};
  const std::vector<Rational> values{3 * -2 + -5 * 4, 3 * 4 + -5 * 16};
  EXPECT_EQ(vandermonde_solve(nodes, values), (std::vector<Rational>{3, -5}));
  EXPECT_THROW(vandermonde_solve({2, 2}, {1, 1}), DegenerateNodes);
  EXPECT_THROW(vandermonde_solve({0}, {1}), DegenerateNodes);
  EXPECT_THROW(vandermonde_solve({1, 2}, {1}), InvalidArgument);
}

TEST(Vandermonde, SolveThenEvaluate) {
  Rng rng(31);
  for (int t = 0; t < 50; ++t) {
    const int n = static_cast<int>(rng.uniform(1, 6));
    std::vector<Rational> nodes, coeffs, values(n);
    while (static_cast<int>(nodes.size()) < n) {
      Rational x = rng.nonzero_rational();
      if (std::find(nodes.begin(), nodes.end(), x) == nodes.end()) nodes.push_back(x);
    }
    for (int m = 0; m < n; ++m) coeffs.push_back(rng.rational());
    for (int l = 0; l < n; ++l) {
      Rational p = nodes[l];
      for (int m = 0; m < n; ++m, p *= nodes[l]) values[l] += coeffs[m] * p;
    }
    EXPECT_EQ(vandermonde_solve(nodes, values), coeffs);
  }
}

TEST(Interpolation, DegenerateK) {
  RationalMatrix a = RationalMatrix::Constant(2, 2, Rational(1));
  const GadgetWiring& w = certified_iff_wiring(2);
  EXPECT_THROW(make_plan(WeightedDigraph::from_matrix(a), 1), DegenerateNodes);
  EXPECT_THROW(make_plan(WeightedDigraph::from_matrix(a), -1), DegenerateNodes);
  EXPECT_THROW(hamiltonian_via_fermionant(a, 3, w), InvalidArgument);  // wiring for another k
  try {
    make_plan(WeightedDigraph::from_matrix(a), -1);
  } catch (const DegenerateNodes& e) {
    EXPECT_NE(std::string(e.what()).find("permanent"), std::string::npos);
  }
}

TEST(Interpolation, TwoVertexComplete) {
  const Rational k(2);
  RationalMatrix a(2, 2);
  a << 3, Rational(1, 2), -2, 5;
  InterpolationTrace trace;
  StratifiedWeights c = recover_stratified(WeightedDigraph::from_matrix(a), k, certified_iff_wiring(k), &trace);
  EXPECT_EQ(c[1], Rational(1, 2) * -2);
  EXPECT_EQ(c[2], 15);
  EXPECT_EQ(trace.sizes, (std::vector<int>{2, 2 * 2 + 3 * 4}));
  EXPECT_EQ(trace.plan.alpha, Rational(1, 4));
}

TEST(Interpolation, Examples) {
  RationalMatrix ones = RationalMatrix::Constant(3, 3, Rational(1));
  EXPECT_EQ(hamiltonian_via_fermionant(ones, 2, certified_iff_wiring(2)), 2);
  RationalMatrix b(2, 2);
  b << 2, 7, Rational(-1, 3), 4;
  EXPECT_EQ(hamiltonian_via_fermionant(b, 3, certified_iff_wiring(3)), Rational(-7, 3));
  RationalMatrix none = RationalMatrix::Zero(3, 3);
  none(0, 1) = 1;
  StratifiedWeights c = recover_stratified(WeightedDigraph::from_matrix(none), 2, certified_iff_wiring(2));
  for (int m = 1; m <= 3; ++m) EXPECT_EQ(c[m], 0);
}

TEST(Interpolation, RoundTripRandom) {
  Rng rng(41);
  for (int k : {2, 3, -2, 5}) {
    const GadgetWiring& w = certified_iff_wiring(k);
    for (int t = 0; t < 3; ++t)
      for (int n = 1; n <= 3; ++n) {
        RationalMatrix a = rng.matrix(n);
        const WeightedDigraph g = WeightedDigraph::from_matrix(a);
        EXPECT_EQ(recover_stratified(g, k, w), stratified_weights(g)) << "k=" << k << " n=" << n;
      }
  }
}

TEST(Interpolation, ScalingLaw) {
  Rng rng(43);
  const Rational k(2), s(Rational(-3, 2));
  RationalMatrix a = rng.matrix(3);
  StratifiedWeights c = recover_stratified(WeightedDigraph::from_matrix(a), k, certified_iff_wiring(k));
  RationalMatrix b = a * s;
  StratifiedWeights d = recover_stratified(WeightedDigraph::from_matrix(b), k, certified_iff_wiring(k));
  for (int m = 1; m <= 3; ++m) EXPECT_EQ(d[m], pow(s, 3) * c[m]);
}

TEST(ModularPipeline, AllOnesTwoByTwo) {
  RationalMatrix a = RationalMatrix::Constant(2, 2, Rational(1));
  ModularReport r = modular_pipeline(a, 2, certified_iff_wiring(2));
  for (const auto& s : r.stages) EXPECT_TRUE(s.ok) << s.name << ": " << s.detail;
  EXPECT_EQ(r.hamiltonian, 1);
  EXPECT_EQ(r.stages.size(), 7u);
  EXPECT_GT(r.lambda, r.bound);
}

TEST(ModularPipeline, IdentityAndRefusal) {
  RationalMatrix id = identity_matrix(2);
  ModularReport r = modular_pipeline(id, 2, certified_iff_wiring(2));
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.hamiltonian, 0);
  EXPECT_EQ(r.lhs_mod, 0);
  EXPECT_EQ(r.rhs_mod, 0);
  EXPECT_THROW(modular_pipeline(id, 2, certified_iff_wiring(2), mpz_class(1000)), InvalidArgument);
  RationalMatrix bad = id * Rational(2);
  EXPECT_THROW(modular_pipeline(bad, 2, certified_iff_wiring(2)), InvalidArgument);
}

}  // namespace
}  // namespace ferm
