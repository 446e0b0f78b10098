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

#ifndef FERM_RATIONAL_HPP_
#define FERM_RATIONAL_HPP_

#include <gmpxx.h>

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

namespace ferm {

// Exact rational p/q over arbitrary-precision integers, always canonical
// (gcd(|p|, q) = 1, q >= 1, zero is 0/1).
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(int x) : v_(x) {}  // NOLINT: implicit so Eigen literals work
  Rational(long x) : v_(x) {}  // NOLINT
  Rational(long long x) : v_(mpz_class(std::to_string(x))) {}  // NOLINT
  Rational(unsigned long x) : v_(x) {}  // NOLINT
  Rational(const mpz_class& x) : v_(x) {}  // NOLINT
  Rational(const mpz_class& num, const mpz_class& den);
  explicit Rational(const mpq_class& x) : v_(x) { v_.canonicalize(); }

  // Parses "[-]p" or "[-]p/q" with q > 0. Throws FormatError.
  static Rational parse(std::string_view text);

  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }
  const mpq_class& raw() const { return v_; }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  std::string str() const { return v_.get_str(); }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  mpq_class v_;
};

Rational abs(const Rational& r);
// r^e for any integer e; r must be nonzero when e < 0.
Rational pow(const Rational& r, long e);
// Largest integer <= r.
mpz_class floor(const Rational& r);
// Nonnegative residue of an integer modulo m > 0.
mpz_class mod(const mpz_class& a, const mpz_class& m);

struct RationalHash {
  size_t operator()(const Rational& r) const;
};

}  // namespace ferm

namespace Eigen {

template <>
struct NumTraits<ferm::Rational> : GenericNumTraits<ferm::Rational> {
  typedef ferm::Rational Real;
  typedef ferm::Rational NonInteger;
  typedef ferm::Rational Literal;
  typedef ferm::Rational Nested;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 10,
    AddCost = 40,
    MulCost = 80
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

#endif  // FERM_RATIONAL_HPP_
