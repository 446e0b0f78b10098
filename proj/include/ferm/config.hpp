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

#ifndef FERM_CONFIG_HPP_
#define FERM_CONFIG_HPP_

namespace ferm {

inline constexpr int kDefaultEnumerationCap = 9;

// Process-wide cap on brute-force enumeration over S_n. Initialized from
// FERM_ENUM_CAP when set, otherwise kDefaultEnumerationCap.
int enumeration_cap();
void set_enumeration_cap(int cap);

// Throws EnumerationTooLarge when n exceeds the cap.
void check_enumeration_cap(int n, const char* what);

}  // namespace ferm

#endif  // FERM_CONFIG_HPP_
