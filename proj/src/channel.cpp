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

#include "uecal/channel.hpp"

#include "uecal/core/error.hpp"
#include "uecal/kernels/kernels.hpp"
#include "uecal/model.hpp"

#include <cmath>
#include <random>
#include <span>

namespace uecal {
namespace {

std::span<const Complex> view(const CVector &v) { return {v.data(), static_cast<std::size_t>(v.size())}; }
std::span<Complex> view(CVector &v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

void draw_complex_gaussian(std::mt19937_64 &engine, double variance, Complex *out, std::size_t n)
{
    std::normal_distribution<double> normal(0.0, 1.0);
    const double scale = std::sqrt(variance / 2.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double re = normal(engine);
        const double im = normal(engine);
        out[i] = Complex(scale * re, scale * im);
    }
}

} // namespace

CVector ObservationSet::stacked() const
{
    return Eigen::Map<const CVector>(y.data(), y.size());
}

ObservationSet synthesize(const Scenario &scenario, const FrontEnd &fe, std::uint64_t seed)
{
    scenario.validate();
    fe.validate();
    if (fe.size() != scenario.antennas)
        throw InvalidArgument("synthesize: front-end size does not match M");

    const std::size_t M = scenario.antennas;
    const std::size_t T = scenario.snapshots;
    std::mt19937_64 engine(seed);

    CVector h(static_cast<Eigen::Index>(M));
    draw_complex_gaussian(engine, scenario.diffuse_power, h.data(), M);

    const CVector a = steering_vector(scenario.aoa, M, scenario.spacing);
    const CVector D = fe.coefficients();

    // Common part of every snapshot: p D (gamma a + h).
    CVector common(static_cast<Eigen::Index>(M));
    kernels::axpy(scenario.los_amplitude, view(a), view(h), view(common));
    kernels::multiply(view(D), view(common), view(common));
    kernels::scale(scenario.pilot, view(common), view(common));

    ObservationSet obs;
    obs.scenario = scenario;
    obs.y.resize(static_cast<Eigen::Index>(M), static_cast<Eigen::Index>(T));
    CVector noise(static_cast<Eigen::Index>(M));
    for (std::size_t t = 0; t < T; ++t) {
        draw_complex_gaussian(engine, scenario.noise_power, noise.data(), M);
        std::span<Complex> column(obs.y.col(static_cast<Eigen::Index>(t)).data(), M);
        kernels::add(view(common), view(noise), column);
    }
    return obs;
}

SampleMoments sample_moments(const ObservationSet &obs)
{
    const std::size_t M = obs.antennas();
    const std::size_t T = obs.snapshots();
    if (T == 0)
        throw InvalidArgument("sample_moments: T must be at least 1");

    SampleMoments out;
    out.snapshots = T;
    out.mean_sum = CVector::Zero(static_cast<Eigen::Index>(M));
    for (std::size_t t = 0; t < T; ++t) {
        std::span<const Complex> col(obs.y.col(static_cast<Eigen::Index>(t)).data(), M);
        kernels::add(view(out.mean_sum), col, view(out.mean_sum));
    }

    // Column j of y_t y_u^H is conj(y_u[j]) * y_t.
    out.cross_blocks.reserve(T * T);
    for (std::size_t t = 0; t < T; ++t) {
        const Complex *yt = obs.y.col(static_cast<Eigen::Index>(t)).data();
        for (std::size_t u = 0; u < T; ++u) {
            const auto yu = obs.y.col(static_cast<Eigen::Index>(u));
            CMatrix block(static_cast<Eigen::Index>(M), static_cast<Eigen::Index>(M));
            for (std::size_t j = 0; j < M; ++j)
                kernels::active().scale(std::conj(yu[static_cast<Eigen::Index>(j)]), yt,
                                        block.col(static_cast<Eigen::Index>(j)).data(), M);
            out.cross_blocks.push_back(std::move(block));
        }
    }
    return out;
}

} // namespace uecal
