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
#include "ferm/suites.hpp"

namespace ferm {
namespace {

TEST(RunTasks, OrderAndSeedsDoNotDependOnJobs) {
  std::vector<SuiteTask> tasks;
  for (int i = 0; i < 9; ++i)
    tasks.push_back({"task " + std::to_string(i), [](Rng& rng) {
                       Report r;
                       r.add("draw", true, std::to_string(rng.next()));
                       return r;
                     }});
  const Report one = run_tasks(tasks, 7, 1);
  const Report many = run_tasks(tasks, 7, 4);
  EXPECT_EQ(one.text(), many.text());
  EXPECT_EQ(one.checks().front().name, "task 0/draw");
  EXPECT_NE(run_tasks(tasks, 8, 1).text(), one.text());
}

TEST(RunTasks, ExceptionBecomesFailure) {
  const Report r = run_tasks({{"boom", [](Rng&) -> Report { throw InvalidArgument("bad"); }}}, 1, 1);
  ASSERT_EQ(r.checks().size(), 1u);
  EXPECT_EQ(r.checks()[0].status, Status::kFail);
  EXPECT_EQ(r.checks()[0].detail, "bad");
  EXPECT_FALSE(r.checks()[0].witness.empty());
}

TEST(Suites, NamesAndUnknown) {
  const auto& names = suite_names();
  EXPECT_EQ(names.back(), "all");
  for (const char* n : {"iff", "lemma1", "lemma2", "thm1", "lemma3", "prop4", "appendix-b", "appendix-c"})
    EXPECT_NE(std::find(names.begin(), names.end(), n), names.end()) << n;
  EXPECT_THROW(run_suite("nope", {}), InvalidArgument);
}

TEST(Suites, SmallRunsPassAndRepeat) {
  SuiteOptions o;
  o.trials = 3;
  o.seed = 42;
  for (const char* name : {"specialization", "characters", "lemma3", "prop4"}) {
    const Report a = run_suite(name, o);
    EXPECT_TRUE(a.ok()) << a.text();
    EXPECT_EQ(a.text(), run_suite(name, o).text());
  }
}

TEST(Suites, SingleTwoColumnShape) {
  SuiteOptions o;
  o.k1 = 5;
  o.k2 = 2;
  o.trials = 2;
  const Report r = run_suite("appendix-c", o);
  EXPECT_TRUE(r.ok()) << r.text();
  EXPECT_EQ(r.checks().size(), 1u);
  o.k2 = 6;
  EXPECT_THROW(run_suite("appendix-c", o), InvalidArgument);
}

}  // namespace
}  // namespace ferm
