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

#include "uecal/model.hpp"

#include "uecal/core/error.hpp"
#include "uecal/core/phase.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <string>

namespace uecal {
namespace {

void check_front_end(const FrontEnd &fe, std::size_t antennas)
{
    if (fe.amplitude.size() != fe.phase.size())
        throw InvalidArgument("front-end amplitude and phase lengths differ");
    if (static_cast<std::size_t>(fe.amplitude.size()) != antennas)
        throw InvalidArgument("front-end has " + std::to_string(fe.amplitude.size()) +
                              " chains, expected " + std::to_string(antennas));
}

void check_known(const KnownQuantities &known)
{
    if (known.snapshots == 0)
        throw InvalidArgument("T must be at least 1");
    if (known.steering.size() == 0)
        throw InvalidArgument("empty steering vector");
}

} // namespace

CVector steering_vector(double aoa, std::size_t antennas, double spacing)
{
    if (antennas == 0)
        throw InvalidArgument("steering_vector: M must be at least 1");
    if (!(spacing > 0.0) || !std::isfinite(spacing))
        throw InvalidArgument("steering_vector: spacing must be positive");

    const double step = -kTwoPi * spacing * std::cos(aoa);
    CVector a(static_cast<Eigen::Index>(antennas));
    for (std::size_t m = 0; m < antennas; ++m)
        a[static_cast<Eigen::Index>(m)] = std::polar(1.0, step * static_cast<double>(m));
    return a;
}

CVector build_mean(const FrontEnd &fe, double los_amplitude, const KnownQuantities &known)
{
    check_known(known);
    const auto M = static_cast<std::size_t>(known.steering.size());
    check_front_end(fe, M);

    const CVector block = los_amplitude * known.pilot * fe.coefficients().cwiseProduct(known.steering);
    CVector mu(static_cast<Eigen::Index>(M * known.snapshots));
    for (std::size_t t = 0; t < known.snapshots; ++t)
        mu.segment(static_cast<Eigen::Index>(t * M), static_cast<Eigen::Index>(M)) = block;
    return mu;
}

CVector build_mean(const Scenario &scenario, const FrontEnd &fe)
{
    scenario.validate();
    return build_mean(fe, scenario.los_amplitude, KnownQuantities::from(scenario));
}

CMatrix build_covariance(const FrontEnd &fe, double diffuse_power, const KnownQuantities &known)
{
    check_known(known);
    const auto M = static_cast<Eigen::Index>(known.steering.size());
    const auto T = static_cast<Eigen::Index>(known.snapshots);
    check_front_end(fe, static_cast<std::size_t>(M));

    // D D^H is diagonal with entries d_m^2 regardless of the phases.
    CMatrix coherent = CMatrix::Zero(M, M);
    for (Eigen::Index m = 0; m < M; ++m)
        coherent(m, m) = diffuse_power * fe.amplitude[m] * fe.amplitude[m];

    CMatrix C(M * T, M * T);
    for (Eigen::Index t = 0; t < T; ++t)
        for (Eigen::Index u = 0; u < T; ++u)
            C.block(t * M, u * M, M, M) = coherent;
    C.diagonal().array() += known.noise_power;
    return C;
}

CMatrix build_covariance(const Scenario &scenario, const FrontEnd &fe)
{
    scenario.validate();
    return build_covariance(fe, scenario.diffuse_power, KnownQuantities::from(scenario));
}

StackedModel build_stacked_model(const Scenario &scenario, const FrontEnd &fe)
{
    return {build_mean(scenario, fe), build_covariance(scenario, fe)};
}

CMatrix dft_matrix(std::size_t points)
{
    if (points == 0)
        throw InvalidArgument("dft_matrix: at least one point is required");
    const auto T = static_cast<Eigen::Index>(points);
    const double norm = 1.0 / std::sqrt(static_cast<double>(points));
    CMatrix Q(T, T);
    for (Eigen::Index k = 0; k < T; ++k)
        for (Eigen::Index t = 0; t < T; ++t) {
            // reduce k*t mod T first so the angle stays small and exact
            const auto kt = static_cast<double>((k * t) % T);
            Q(k, t) = std::polar(norm, -kTwoPi * kt / static_cast<double>(T));
        }
    return Q;
}

CVector apply_temporal_dft(const CVector &stacked, std::size_t antennas, std::size_t snapshots)
{
    const auto M = static_cast<Eigen::Index>(antennas);
    const auto T = static_cast<Eigen::Index>(snapshots);
    if (stacked.size() != M * T)
        throw InvalidArgument("apply_temporal_dft: stacked length is not M*T");

    const CMatrix Q = dft_matrix(snapshots);
    // Column t of Y is snapshot t; (Q (x) I_M) y stacks the columns of Y Q^T.
    const Eigen::Map<const CMatrix> Y(stacked.data(), M, T);
    CMatrix W = Y * Q.transpose();
    return Eigen::Map<const CVector>(W.data(), M * T);
}

Whitening dft_whitening(const FrontEnd &fe, double diffuse_power, const KnownQuantities &known)
{
    check_known(known);
    const auto M = static_cast<Eigen::Index>(known.steering.size());
    const auto T = static_cast<Eigen::Index>(known.snapshots);
    check_front_end(fe, static_cast<std::size_t>(M));

    Whitening w;
    w.transform = Eigen::kroneckerProduct(dft_matrix(known.snapshots), CMatrix::Identity(M, M));
    w.lambda = RVector::Constant(M * T, known.noise_power);
    for (Eigen::Index m = 0; m < M; ++m) {
        const double d = fe.amplitude[m];
        w.lambda[m] += diffuse_power * static_cast<double>(T) * d * d;
    }
    return w;
}

Whitening dft_whitening(const Scenario &scenario, const FrontEnd &fe)
{
    scenario.validate();
    return dft_whitening(fe, scenario.diffuse_power, KnownQuantities::from(scenario));
}

double noise_power_for_snr(double snr, const FrontEnd &fe, double diffuse_power, double los_amplitude)
{
    if (!(snr > 0.0) || !std::isfinite(snr))
        throw InvalidArgument("noise_power_for_snr: snr must be positive and finite");
    if (fe.amplitude.size() == 0)
        throw InvalidArgument("noise_power_for_snr: empty front-end");
    const double M = static_cast<double>(fe.amplitude.size());
    const double power = fe.amplitude.squaredNorm() * (diffuse_power + los_amplitude * los_amplitude);
    return power / (M * snr);
}

double snr_for_noise_power(double noise_power, const FrontEnd &fe, double diffuse_power, double los_amplitude)
{
    if (!(noise_power > 0.0))
        throw InvalidArgument("snr_for_noise_power: noise power must be positive");
    const double M = static_cast<double>(fe.amplitude.size());
    return fe.amplitude.squaredNorm() * (diffuse_power + los_amplitude * los_amplitude) / (M * noise_power);
}

} // namespace uecal
