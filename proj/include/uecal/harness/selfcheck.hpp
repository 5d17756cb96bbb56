// SPDX-License-Identifier: Apache-2.0
//
// uecal - UE-aided absolute calibration of massive MIMO front-ends
// Copyright (C) 2026 The uecal authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace uecal::harness {

struct CheckResult
{
    std::string name;
    bool passed = false;
    double worst = 0.0;     ///< worst observed error
    double tolerance = 0.0;
};

/// Quick randomized oracle suites: whitening identity, closed-form vs
/// finite-difference FIM, Schur-path vs dense-inverse bounds, and MLE vs
/// moment phase estimates. Each returns its worst error against a fixed tolerance.
CheckResult check_whitening(std::uint64_t seed, int instances = 20);
CheckResult check_fim_cross(std::uint64_t seed, int instances = 5);
CheckResult check_schur(std::uint64_t seed, int instances = 5);
CheckResult check_mle_moment(std::uint64_t seed, int instances = 20);

std::vector<CheckResult> run_selfcheck(std::uint64_t seed = 1);

} // namespace uecal::harness
