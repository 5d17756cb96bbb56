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

#include "uecal/core/phase.hpp"
#include "uecal/core/types.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <cstring>
#include <random>

namespace uecal::test {

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

inline FrontEnd random_front_end(std::mt19937_64 &rng, std::size_t M)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    FrontEnd fe{RVector(static_cast<Eigen::Index>(M)), RVector(static_cast<Eigen::Index>(M))};
    for (Eigen::Index m = 0; m < fe.amplitude.size(); ++m) {
        fe.amplitude[m] = 0.5 + u(rng);
        fe.phase[m] = kPi - kTwoPi * u(rng);
    }
    return fe;
}

inline Scenario random_scenario(std::mt19937_64 &rng, std::size_t M, std::size_t T)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Scenario sc;
    sc.antennas = M;
    sc.snapshots = T;
    sc.los_amplitude = 0.2 + 1.8 * u(rng);
    sc.diffuse_power = 0.2 + 1.8 * u(rng);
    sc.noise_power = 0.1 + 1.9 * u(rng);
    sc.aoa = (u(rng) - 0.5) * kPi;
    sc.pilot = std::polar(1.0, kPi - kTwoPi * u(rng));
    return sc;
}

inline Scenario make_scenario(std::size_t M, std::size_t T, double gamma, double sigma2, double n0,
                              double aoa = 0.0)
{
    Scenario sc;
    sc.antennas = M;
    sc.snapshots = T;
    sc.los_amplitude = gamma;
    sc.diffuse_power = sigma2;
    sc.noise_power = n0;
    sc.aoa = aoa;
    return sc;
}

inline double max_abs_diff(const CMatrix &a, const CMatrix &b)
{
    return (a - b).cwiseAbs().maxCoeff();
}

} // namespace uecal::test
