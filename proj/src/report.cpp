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

#include "ferm/report.hpp"

#include <sstream>

namespace ferm {

const char* status_name(Status s) {
  switch (s) {
    case Status::kPass:
      return "PASS";
    case Status::kFail:
      return "FAIL";
    case Status::kSkipped:
      return "SKIPPED";
  }
  return "?";
}

void Report::add(const std::string& name, bool ok, const std::string& detail, const std::string& witness) {
  checks_.push_back({name, ok ? Status::kPass : Status::kFail, detail, ok ? std::string() : witness});
}

void Report::skip(const std::string& name, const std::string& reason) {
  checks_.push_back({name, Status::kSkipped, reason, ""});
}

void Report::merge(const Report& other, const std::string& prefix) {
  for (CheckResult c : other.checks_) {
    if (!prefix.empty()) c.name = prefix + "/" + c.name;
    checks_.push_back(std::move(c));
  }
  for (const std::string& n : other.notes_) notes_.push_back(prefix.empty() ? n : prefix + ": " + n);
}

bool Report::ok() const { return count(Status::kFail) == 0; }

int Report::count(Status s) const {
  int c = 0;
  for (const auto& x : checks_) c += x.status == s;
  return c;
}

std::string Report::text() const {
  std::ostringstream os;
  for (const auto& c : checks_) {
    os << status_name(c.status) << ' ' << c.name;
    if (!c.detail.empty()) os << ": " << c.detail;
    os << '\n';
    if (!c.witness.empty()) os << "  witness: " << c.witness << '\n';
  }
  for (const auto& n : notes_) os << "note: " << n << '\n';
  os << "summary: " << count(Status::kPass) << " passed, " << count(Status::kFail) << " failed, "
     << count(Status::kSkipped) << " skipped\n";
  return os.str();
}

std::string Report::lines() const {
  std::ostringstream os;
  for (const auto& c : checks_)
    os << "check\t" << c.name << '\t' << status_name(c.status) << '\t' << c.detail << '\t' << c.witness << '\n';
  for (const auto& n : notes_) os << "note\t" << n << '\n';
  return os.str();
}

}  // namespace ferm
