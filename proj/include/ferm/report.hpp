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

#ifndef FERM_REPORT_HPP_
#define FERM_REPORT_HPP_

// Named PASS/FAIL/SKIPPED checks with inline witnesses.

#include <string>
#include <vector>

namespace ferm {

enum class Status { kPass, kFail, kSkipped };

const char* status_name(Status s);

struct CheckResult {
  std::string name;
  Status status = Status::kPass;
  std::string detail;
  // Serialized inputs that reproduce a failure; empty on PASS.
  std::string witness;
};

class Report {
 public:
  void add(const std::string& name, bool ok, const std::string& detail = "", const std::string& witness = "");
  void skip(const std::string& name, const std::string& reason);
  void note(const std::string& text) { notes_.push_back(text); }
  // Appends other's checks with names prefixed by "prefix/".
  void merge(const Report& other, const std::string& prefix = "");

  bool ok() const;
  int count(Status s) const;
  const std::vector<CheckResult>& checks() const { return checks_; }
  const std::vector<std::string>& notes() const { return notes_; }

  // One "STATUS name: detail" line per check, notes after, then a summary.
  std::string text() const;
  // Tab-separated "check<TAB>name<TAB>STATUS<TAB>detail<TAB>witness" and
  // "note<TAB>text" lines.
  std::string lines() const;

 private:
  std::vector<CheckResult> checks_;
  std::vector<std::string> notes_;
};

}  // namespace ferm

#endif  // FERM_REPORT_HPP_
