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

#ifndef FERM_PERMUTATION_HPP_
#define FERM_PERMUTATION_HPP_

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "ferm/config.hpp"

namespace ferm {

// Weakly decreasing list of positive integers. Used for cycle types and for
// Young diagram row lists.
class Partition {
 public:
  Partition() = default;
  // Sorts descending; throws InvalidArgument on a nonpositive part.
  explicit Partition(std::vector<int> parts);

  const std::vector<int>& parts() const { return parts_; }
  int weight() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }
  int length() const { return static_cast<int>(parts_.size()); }
  bool empty() const { return parts_.empty(); }
  int operator[](int i) const { return parts_[i]; }

  // "[3,1,1]"
  std::string str() const;

  friend bool operator==(const Partition& a, const Partition& b) { return a.parts_ == b.parts_; }
  friend bool operator!=(const Partition& a, const Partition& b) { return a.parts_ != b.parts_; }
  friend bool operator<(const Partition& a, const Partition& b) { return a.parts_ < b.parts_; }

 private:
  std::vector<int> parts_;
};

// All partitions of n, in reverse lexicographic order ([n] first).
std::vector<Partition> partitions_of(int n);

// Element of S_n. images()[i-1] = pi(i), values 1-based.
class Permutation {
 public:
  // Throws InvalidArgument unless images is a bijection on {1..n}.
  explicit Permutation(std::vector<int> images);
  static Permutation identity(int n);

  int size() const { return static_cast<int>(images_.size()); }
  // 1-based application: (*this)(i) = pi(i).
  int operator()(int i) const { return images_[i - 1]; }
  const std::vector<int>& images() const { return images_; }

  friend bool operator==(const Permutation& a, const Permutation& b) { return a.images_ == b.images_; }
  friend bool operator<(const Permutation& a, const Permutation& b) { return a.images_ < b.images_; }

 private:
  std::vector<int> images_;
};

int cycle_count(const Permutation& p);
Partition cycle_type(const Permutation& p);
int sign(const Permutation& p);

// Cycle count of a 0-based image array; no validation.
int cycle_count_raw(const std::vector<int>& images0);
// Cycle lengths of a 0-based image array, sorted descending.
std::vector<int> cycle_lengths_raw(const std::vector<int>& images0);

// Calls fn(images0) for every permutation of {0..n-1} in lexicographic order.
// Subject to the enumeration cap.
template <typename Fn>
void for_each_permutation(int n, Fn&& fn) {
  check_enumeration_cap(n, "permutations");
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    fn(static_cast<const std::vector<int>&>(p));
  } while (std::next_permutation(p.begin(), p.end()));
}

// All n! permutations in lexicographic order. Subject to the enumeration cap.
std::vector<Permutation> permutations(int n);

// n! as an unsigned integer; n <= 20.
unsigned long long factorial(int n);

}  // namespace ferm

#endif  // FERM_PERMUTATION_HPP_
