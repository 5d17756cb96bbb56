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

#include "uecal/core/types.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace uecal {

/// One observation window: column t of `y` is the snapshot y_t.
struct ObservationSet
{
    CMatrix y; ///< M x T
    Scenario scenario;

    std::size_t antennas() const { return static_cast<std::size_t>(y.rows()); }
    std::size_t snapshots() const { return static_cast<std::size_t>(y.cols()); }

    /// Snapshots stacked block by block, index t*M + m.
    CVector stacked() const;
};

/// Raw first and second sample moments of one observation window.
struct SampleMoments
{
    CVector mean_sum;                 ///< sum_t y_t
    std::size_t snapshots = 0;
    std::vector<CMatrix> cross_blocks; ///< y_t y_u^H at index t*T + u

    const CMatrix &block(std::size_t t, std::size_t u) const { return cross_blocks[t * snapshots + u]; }
};

/// Draws one realization of y_t = gamma D a p + D h p + n_t, t = 1..T.
///
/// The diffuse vector h ~ CN(0, sigma^2 I_M) is drawn once and shared by all T
/// snapshots; the noise n_t ~ CN(0, N0 I_M) is independent per snapshot. The
/// stream is std::mt19937_64 seeded with `seed`, and standard normals from
/// std::normal_distribution are consumed in this order: h (re, im per chain),
/// then n_1 .. n_T (re, im per chain). Each part is scaled by sqrt(var / 2).
ObservationSet synthesize(const Scenario &scenario, const FrontEnd &fe, std::uint64_t seed);

SampleMoments sample_moments(const ObservationSet &obs);

} // namespace uecal
