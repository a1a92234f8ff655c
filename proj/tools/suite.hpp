// Copyright 2026 The natspec Authors
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

// The invariant suite behind `natspec verify`: seeded random measures plus
// fixed fixtures, each property reported with its worst residual.

#include <cstdint>
#include <string>
#include <vector>

#include "natspec/io.hpp"

namespace natspec::cli {

struct SuiteCheck {
    std::string name;
    bool passed = false;
    double residual = 0.0;
    double threshold = 0.0;
    std::int64_t cases = 0;
    std::string detail;
};

struct SuiteOptions {
    std::uint64_t seed = 42;
    int random_cases = 20;
    std::int64_t N = 1024;  ///< transform range for decomposition checks
};

std::vector<SuiteCheck> run_suite(const SuiteOptions& opts);

io::Json suite_to_json(const std::vector<SuiteCheck>& checks, const SuiteOptions& opts);

}  // namespace natspec::cli
