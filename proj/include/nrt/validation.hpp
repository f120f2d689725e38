// Copyright 2026 The nrtransport Authors
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

#include <iosfwd>
#include <string>
#include <vector>

namespace nrt {

enum class Suite
{
    limits,
    oracles,
    symmetry,
    all,
};

struct Check
{
    std::string name;
    double measured = 0.0;
    double limit = 0.0;
    /// "<=", ">=", "<" or ">".
    std::string relation;
    bool passed = false;
    /// Monitored checks are reported but do not fail the suite.
    bool monitored = false;
};

struct ValidationReport
{
    std::vector<Check> checks;

    bool passed() const;
};

struct ValidationOptions
{
    unsigned threads = 1;
    double quadrature_rel_tol = 1e-6;
    /// Grid size of the distance sweeps.
    int points = 60;
};

ValidationReport run_validation(Suite suite, const ValidationOptions& opt = {});

/// One "key: value" line per field, then "summary: PASS|FAIL".
void write_report(std::ostream& out, const ValidationReport& report);

}  // namespace nrt
