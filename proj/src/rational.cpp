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

#include "ferm/rational.hpp"

#include <atomic>
#include <cstdlib>
#include <ostream>

#include "ferm/config.hpp"
#include "ferm/errors.hpp"

namespace ferm {

Rational::Rational(const mpz_class& num, const mpz_class& den) : v_(num, den) {
  if (den == 0) throw InvalidArgument("zero denominator");
  v_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw InvalidArgument("division by zero");
  v_ /= o.v_;
  return *this;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  auto slash = s.find('/');
  std::string_view num = s.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? "1" : s.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den))
    throw FormatError("malformed rational '" + std::string(text) + "'");
  mpz_class p{std::string(num)}, q{std::string(den)};
  if (q == 0) throw FormatError("zero denominator in '" + std::string(text) + "'");
  if (negative) p = -p;
  return Rational(p, q);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

Rational pow(const Rational& r, long e) {
  if (e < 0) {
    if (r.is_zero()) throw InvalidArgument("zero to a negative power");
    return Rational(1) / pow(r, -e);
  }
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), r.raw().get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(den.get_mpz_t(), r.raw().get_den_mpz_t(), static_cast<unsigned long>(e));
  return Rational(num, den);
}

mpz_class floor(const Rational& r) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), r.raw().get_num_mpz_t(), r.raw().get_den_mpz_t());
  return q;
}

mpz_class mod(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

size_t RationalHash::operator()(const Rational& r) const {
  return std::hash<std::string>()(r.str());
}

namespace {

int initial_cap() {
  if (const char* env = std::getenv("FERM_ENUM_CAP")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return kDefaultEnumerationCap;
}

std::atomic<int>& cap_storage() {
  static std::atomic<int> cap{initial_cap()};
  return cap;
}

}  // namespace

int enumeration_cap() { return cap_storage().load(); }

void set_enumeration_cap(int cap) {
  if (cap < 1) throw InvalidArgument("enumeration cap must be positive");
  cap_storage().store(cap);
}

void check_enumeration_cap(int n, const char* what) {
  if (n > enumeration_cap())
    throw EnumerationTooLarge(std::string("enumeration too large: ") + what + " needs n=" +
                              std::to_string(n) + " > cap " + std::to_string(enumeration_cap()));
}

}  // namespace ferm
