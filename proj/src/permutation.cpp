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

#include "ferm/permutation.hpp"

#include <sstream>

#include "ferm/errors.hpp"

namespace ferm {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (int p : parts_)
    if (p <= 0) throw InvalidArgument("partition parts must be positive");
  std::sort(parts_.begin(), parts_.end(), std::greater<int>());
}

std::string Partition::str() const {
  std::ostringstream os;
  os << '[';
  for (size_t i = 0; i < parts_.size(); ++i) os << (i ? "," : "") << parts_[i];
  os << ']';
  return os.str();
}

namespace {

void partitions_rec(int remaining, int max_part, std::vector<int>& cur, std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(cur);
    return;
  }
  for (int p = std::min(remaining, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions_rec(remaining - p, p, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Partition> partitions_of(int n) {
  std::vector<Partition> out;
  std::vector<int> cur;
  if (n == 0) return {Partition()};
  partitions_rec(n, n, cur, out);
  return out;
}

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  const int n = size();
  std::vector<bool> seen(n + 1, false);
  for (int v : images_) {
    if (v < 1 || v > n || seen[v]) throw InvalidArgument("not a permutation of {1..n}");
    seen[v] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> im(n);
  std::iota(im.begin(), im.end(), 1);
  return Permutation(std::move(im));
}

int cycle_count_raw(const std::vector<int>& p) {
  const int n = static_cast<int>(p.size());
  std::vector<char> seen(n, 0);
  int cycles = 0;
  for (int i = 0; i < n; ++i) {
    if (seen[i]) continue;
    ++cycles;
    for (int j = i; !seen[j]; j = p[j]) seen[j] = 1;
  }
  return cycles;
}

std::vector<int> cycle_lengths_raw(const std::vector<int>& p) {
  const int n = static_cast<int>(p.size());
  std::vector<char> seen(n, 0);
  std::vector<int> lengths;
  for (int i = 0; i < n; ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (int j = i; !seen[j]; j = p[j]) {
      seen[j] = 1;
      ++len;
    }
    lengths.push_back(len);
  }
  std::sort(lengths.begin(), lengths.end(), std::greater<int>());
  return lengths;
}

namespace {

std::vector<int> zero_based(const Permutation& p) {
  std::vector<int> z(p.images());
  for (int& v : z) --v;
  return z;
}

}  // namespace

int cycle_count(const Permutation& p) { return cycle_count_raw(zero_based(p)); }

Partition cycle_type(const Permutation& p) { return Partition(cycle_lengths_raw(zero_based(p))); }

int sign(const Permutation& p) { return (p.size() - cycle_count(p)) % 2 == 0 ? 1 : -1; }

std::vector<Permutation> permutations(int n) {
  std::vector<Permutation> out;
  for_each_permutation(n, [&](const std::vector<int>& p) {
    std::vector<int> im(p);
    for (int& v : im) ++v;
    out.emplace_back(std::move(im));
  });
  return out;
}

unsigned long long factorial(int n) {
  if (n < 0 || n > 20) throw InvalidArgument("factorial out of range");
  unsigned long long f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<unsigned long long>(i);
  return f;
}

}  // namespace ferm
