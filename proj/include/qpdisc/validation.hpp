// Copyright 2026 The qpdisc developers
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

#pragma once

#include <sstream>
#include <string>
#include <vector>

namespace qpdisc {

/// One named structural check together with its numerical residual.
struct Check {
  std::string name;
  bool passed = false;
  double residual = 0.0;
};

/// Diagnostic result of a structural validation. Never throws; callers
/// inspect the individual checks or all_passed().
struct ValidationReport {
  std::vector<Check> checks;

  bool all_passed() const {
    for (const auto& c : checks) {
      if (!c.passed) return false;
    }
    return true;
  }

  void add(std::string name, bool passed, double residual) {
    checks.push_back({std::move(name), passed, residual});
  }

  std::string summary() const {
    std::ostringstream os;
    for (const auto& c : checks) {
      os << (c.passed ? "pass " : "FAIL ") << c.name << " (residual " << c.residual << ")\n";
    }
    return os.str();
  }
};

}  // namespace qpdisc
