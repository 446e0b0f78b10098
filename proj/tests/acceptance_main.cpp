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

// Runs every acceptance criterion at its stated scale and prints one
// PASS/FAIL line per criterion. A criterion passes when its suite reports at
// least one check, no failures, no skipped checks, and it finished inside its
// time limit. Failing checks are printed below the line.

#include <chrono>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "ferm/suites.hpp"

namespace {

struct Criterion {
  int number;
  std::string title;
  double limit_seconds;  // 0: no limit
  std::function<ferm::Report(const ferm::SuiteOptions&)> run;
  ferm::SuiteOptions options;
};

ferm::SuiteOptions with(int trials, std::optional<ferm::Rational> k = std::nullopt) {
  ferm::SuiteOptions o;
  o.trials = trials;
  o.k = k;
  o.jobs = ferm::default_jobs();
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "specialization: 200 matrices, n=1..6, k=1 det, k=-1 per, k=0 zero", 10, ferm::specialization_suite,
       with(200)},
      {2, "subset DP equals permutation sum, n<=7, 50 graphs per n", 60, ferm::evaluator_suite, with(50)},
      {3, "iff wiring found and certified on all <=3-vertex testbeds, k in {2,3,-2,1/2}, 20 weightings", 300,
       ferm::iff_suite, with(20, ferm::Rational(2))},
      {4, "multi-insertion factor and mismatch annihilation, 2-3 vertex hosts, 1-2 pairs", 0,
       ferm::multi_insertion_suite, with(0)},
      {5, "replication per-cover factor, host n<=3, l in {2,3}", 0, ferm::replication_suite, with(0)},
      {6, "Hamiltonian round trip n<=3, k in {2,3,1/2,-2}, 10 matrices; k in {1,-1} refused", 0,
       ferm::round_trip_suite, with(10)},
      {7, "decomposition n<=6, k in {2,3}, 50 matrices; d at n=2; projection equals content product", 0,
       ferm::decomposition_suite, with(50)},
      {8, "characters: first orthogonality n<=6, row and column characters", 0, ferm::character_suite, with(0)},
      {9, "branch identity and Ferm_2 from square immanants, n in {4,6}, 20 matrices", 300,
       ferm::square_route_suite, with(20)},
      {10, "weight elimination for weights 2,3,5,20 and the modular congruence at n=2, k=2", 0,
       ferm::weight_elimination_suite, with(0)},
      {11, "two-column identities k1+k2<=8; constant-difference ledgers n in {6,8}, delta in {1,2}", 0,
       ferm::two_column_suite, with(0)},
  };

  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    ferm::Report report;
    std::string error;
    try {
      report = c.run(c.options);
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const int passed = report.count(ferm::Status::kPass);
    const bool in_time = c.limit_seconds <= 0 || seconds < c.limit_seconds;
    const bool ok = error.empty() && passed > 0 && report.ok() && report.count(ferm::Status::kSkipped) == 0 && in_time;
    failed += !ok;
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << c.number << ": " << c.title << " [" << passed
              << " checks, " << seconds << " s";
    if (c.limit_seconds > 0) std::cout << ", limit " << c.limit_seconds << " s";
    std::cout << "]\n";
    if (!error.empty()) std::cout << "  error: " << error << '\n';
    for (const ferm::CheckResult& r : report.checks())
      if (r.status != ferm::Status::kPass)
        std::cout << "  " << ferm::status_name(r.status) << ' ' << r.name << ": " << r.detail << "\n    witness: "
                  << r.witness << '\n';
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << '\n';
  return failed == 0 ? 0 : 1;
}
