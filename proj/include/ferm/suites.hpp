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

#ifndef FERM_SUITES_HPP_
#define FERM_SUITES_HPP_

// Named verification suites. Each suite draws its inputs from the seed, runs
// its checks (optionally on a worker pool) and returns a Report whose check
// order does not depend on scheduling.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ferm/random.hpp"
#include "ferm/rational.hpp"
#include "ferm/report.hpp"

namespace ferm {

struct SuiteOptions {
  std::uint64_t seed = kDefaultSeed;
  int trials = 0;              // 0: the suite's default
  std::optional<Rational> k;   // unset: the suite's k list
  int n = 0;                   // 0: the suite's size range
  int k1 = -1;                 // two-column suite: a single shape cols[k1,k2]
  int k2 = -1;
  int jobs = 1;
};

// A unit of work with its own generator, seeded from (seed, name).
struct SuiteTask {
  std::string name;
  std::function<Report(Rng&)> run;
};

// Runs tasks on up to `jobs` threads and merges their reports in task order,
// each under its task name. A task that throws becomes one FAIL check.
Report run_tasks(const std::vector<SuiteTask>& tasks, std::uint64_t seed, int jobs);

// FERM_JOBS, or 1 when unset or invalid.
int default_jobs();

// Ferm at k = 1 (signed) equals det, at k = -1 (plain) per, at k = 0 zero.
Report specialization_suite(const SuiteOptions& o);
// Subset DP against the permutation sum on random weighted digraphs.
Report evaluator_suite(const SuiteOptions& o);
// First orthogonality and the row/column characters.
Report character_suite(const SuiteOptions& o);
// Certification of the iff wiring at k over every small testbed.
Report iff_suite(const SuiteOptions& o);
// Several iff gadgets in one host: aggregate factor and mismatch annihilation.
Report multi_insertion_suite(const SuiteOptions& o);
// Per-cover factor of the l-fold replication.
Report replication_suite(const SuiteOptions& o);
// Hamiltonian recovered by interpolation against the direct value.
Report round_trip_suite(const SuiteOptions& o);
// Character expansion of the fermionant and its coefficients.
Report decomposition_suite(const SuiteOptions& o);
// Branch identity and Ferm_2 from square immanants.
Report square_route_suite(const SuiteOptions& o);
// Weight elimination and the modular chain.
Report weight_elimination_suite(const SuiteOptions& o);
// Two-column identities, constant-difference ledgers and the family routes.
Report two_column_suite(const SuiteOptions& o);

// The CLI suite names, "all" last.
const std::vector<std::string>& suite_names();

// Throws InvalidArgument for an unknown name. "all" runs every suite with
// trials, k and n left to each suite unless set.
Report run_suite(const std::string& name, const SuiteOptions& o);

}  // namespace ferm

#endif  // FERM_SUITES_HPP_
