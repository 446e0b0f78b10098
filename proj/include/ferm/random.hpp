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

#ifndef FERM_RANDOM_HPP_
#define FERM_RANDOM_HPP_

#include <cstdint>
#include <random>

#include "ferm/matrix.hpp"
#include "ferm/rational.hpp"

namespace ferm {

inline constexpr std::uint64_t kDefaultSeed = 20260101;

// Seeded generator whose derived draws do not depend on the standard
// library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = kDefaultSeed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform integer in [lo, hi].
  long uniform(long lo, long hi) {
    auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<long>(engine_() % span);
  }
  bool coin() { return (engine_() >> 11) & 1u; }

  // Denominator in [1, max_den], value in [-max_abs, max_abs].
  Rational rational(long max_abs = 5, long max_den = 4) {
    long den = uniform(1, max_den);
    long num = uniform(-max_abs * den, max_abs * den);
    return Rational(mpz_class(num), mpz_class(den));
  }
  Rational nonzero_rational(long max_abs = 5, long max_den = 4) {
    for (;;) {
      Rational r = rational(max_abs, max_den);
      if (!r.is_zero()) return r;
    }
  }

  RationalMatrix matrix(int n, long max_abs = 5, long max_den = 4) {
    RationalMatrix a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = rational(max_abs, max_den);
    return a;
  }

  // Derives an independent generator, e.g. one per trial.
  Rng split() { return Rng(engine_() ^ 0x9e3779b97f4a7c15ull); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ferm

#endif  // FERM_RANDOM_HPP_
