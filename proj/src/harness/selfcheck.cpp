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

#include "uecal/harness/selfcheck.hpp"

#include "uecal/core/phase.hpp"
#include "uecal/crlb.hpp"
#include "uecal/estimators.hpp"
#include "uecal/model.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace uecal::harness {
namespace {

struct Instance
{
    Scenario scenario;
    FrontEnd fe;
};

Instance random_instance(std::mt19937_64 &rng, std::size_t M, std::size_t T)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Instance in;
    in.scenario.antennas = M;
    in.scenario.snapshots = T;
    in.scenario.los_amplitude = 0.2 + 1.8 * u(rng);
    in.scenario.diffuse_power = 0.2 + 1.8 * u(rng);
    in.scenario.noise_power = 0.1 + 1.9 * u(rng);
    in.scenario.aoa = (u(rng) - 0.5) * kPi;
    in.scenario.pilot = std::polar(1.0, kPi - kTwoPi * u(rng));
    in.fe.amplitude.resize(static_cast<Eigen::Index>(M));
    in.fe.phase.resize(static_cast<Eigen::Index>(M));
    for (Eigen::Index m = 0; m < in.fe.amplitude.size(); ++m) {
        in.fe.amplitude[m] = 0.5 + u(rng);
        in.fe.phase[m] = kPi - kTwoPi * u(rng);
    }
    return in;
}

double max_abs(const RMatrix &m)
{
    return m.cwiseAbs().maxCoeff();
}

} // namespace

CheckResult check_whitening(std::uint64_t seed, int instances)
{
    CheckResult out{"whitening identity", true, 0.0, 1e-10};
    std::mt19937_64 rng(seed);
    for (int i = 0; i < instances; ++i) {
        const std::size_t M = 1 + rng() % 8, T = 1 + rng() % 5;
        const Instance in = random_instance(rng, M, T);
        const CMatrix C = build_covariance(in.scenario, in.fe);
        const Whitening w = dft_whitening(in.scenario, in.fe);
        const CMatrix rebuilt = w.transform.adjoint() * w.lambda.cast<Complex>().asDiagonal() * w.transform;
        const double rel = (rebuilt - C).cwiseAbs().maxCoeff() / C.cwiseAbs().maxCoeff();
        out.worst = std::max(out.worst, rel);
    }
    out.passed = out.worst <= out.tolerance;
    return out;
}

CheckResult check_fim_cross(std::uint64_t seed, int instances)
{
    CheckResult out{"FIM closed form vs finite differences", true, 0.0, 1e-4};
    std::mt19937_64 rng(seed);
    for (int i = 0; i < instances; ++i) {
        const Instance in = random_instance(rng, 4, 3);
        const ParamVector xi(in.fe, in.scenario.diffuse_power, in.scenario.los_amplitude);
        const KnownQuantities known = KnownQuantities::from(in.scenario);
        const RMatrix closed = fim_closed_form(xi, known).matrix;
        const RMatrix numeric = fim_numeric(xi, known).matrix;
        const double scale = max_abs(closed);
        for (Eigen::Index r = 0; r < closed.rows(); ++r)
            for (Eigen::Index c = 0; c < closed.cols(); ++c) {
                const double err = std::abs(closed(r, c) - numeric(r, c));
                // Entries that vanish in closed form are judged on the matrix scale.
                const double rel = closed(r, c) != 0.0 ? err / std::abs(closed(r, c)) : err / scale;
                out.worst = std::max(out.worst, rel);
            }
    }
    out.passed = out.worst <= out.tolerance;
    return out;
}

CheckResult check_schur(std::uint64_t seed, int instances)
{
    CheckResult out{"Schur-path bounds vs dense inverse", true, 0.0, 1e-8};
    std::mt19937_64 rng(seed);
    for (int i = 0; i < instances; ++i) {
        const Instance in = random_instance(rng, 4 + 4 * static_cast<std::size_t>(i % 3), 3);
        const ParamVector xi(in.fe, in.scenario.diffuse_power, in.scenario.los_amplitude);
        const KnownQuantities known = KnownQuantities::from(in.scenario);
        const CrlbReport exact = crlb_diagonal_exact(fim_closed_form(xi, known));
        const CrlbReport schur = crlb_diagonal_schur(xi, known);
        for (Eigen::Index m = 0; m < exact.crlb_d.size(); ++m) {
            out.worst = std::max(out.worst, std::abs(schur.crlb_d[m] - exact.crlb_d[m]) / exact.crlb_d[m]);
            out.worst =
                std::max(out.worst, std::abs(schur.crlb_alpha[m] - exact.crlb_alpha[m]) / exact.crlb_alpha[m]);
        }
    }
    out.passed = out.worst <= out.tolerance;
    return out;
}

CheckResult check_mle_moment(std::uint64_t seed, int instances)
{
    CheckResult out{"MLE vs moment phase estimate", true, 0.0, 1e-6};
    std::mt19937_64 rng(seed);
    for (int i = 0; i < instances; ++i) {
        const Instance in = random_instance(rng, 8, 3);
        const ObservationSet obs = synthesize(in.scenario, in.fe, rng());
        const CVector a = steering_vector(in.scenario.aoa, 8, in.scenario.spacing);
        const RVector moment = estimate_phase_moment(obs, a, in.scenario.pilot).alpha_hat;
        const RVector mle = estimate_phase_mle_numeric(obs, a, in.scenario.pilot).alpha_hat;
        for (Eigen::Index m = 0; m < moment.size(); ++m)
            out.worst = std::max(out.worst, std::abs(wrap_phase(mle[m] - moment[m])));
    }
    out.passed = out.worst <= out.tolerance;
    return out;
}

std::vector<CheckResult> run_selfcheck(std::uint64_t seed)
{
    return {check_whitening(seed), check_fim_cross(seed + 1), check_schur(seed + 2), check_mle_moment(seed + 3)};
}

} // namespace uecal::harness
