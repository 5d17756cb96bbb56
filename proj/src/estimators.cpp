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

#include "uecal/estimators.hpp"

#include "uecal/core/error.hpp"
#include "uecal/core/phase.hpp"
#include "uecal/model.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace uecal {
namespace {

constexpr std::size_t kGridPoints = 360;
constexpr double kRefineTolerance = 1e-9;

void check_inputs(const ObservationSet &obs, const CVector &steering, Complex pilot)
{
    if (obs.snapshots() == 0 || obs.antennas() == 0)
        throw InvalidArgument("empty observation set");
    if (static_cast<std::size_t>(steering.size()) != obs.antennas())
        throw InvalidArgument("steering vector length does not match M");
    if (std::abs(std::abs(pilot) - 1.0) > 1e-12)
        throw InvalidArgument("pilot must have unit modulus");
    for (Eigen::Index m = 0; m < steering.size(); ++m)
        if (steering[m] == Complex(0.0, 0.0))
            throw InvalidArgument("steering vector has a zero entry");
}

struct Grid
{
    std::array<double, kGridPoints> angle;
    std::array<double, kGridPoints> cos;
    std::array<double, kGridPoints> sin;
};

const Grid &grid()
{
    static const Grid g = [] {
        Grid out{};
        for (std::size_t k = 0; k < kGridPoints; ++k) {
            // (-pi, pi]: the last point is exactly pi
            out.angle[k] = -kPi + kTwoPi * static_cast<double>(k + 1) / static_cast<double>(kGridPoints);
            out.cos[k] = std::cos(out.angle[k]);
            out.sin[k] = std::sin(out.angle[k]);
        }
        return out;
    }();
    return g;
}

/// One chain of the alpha objective, f(alpha) = w Re[exp(-j alpha) z].
struct ChainObjective
{
    double weight;
    Complex z;

    double value_at_grid(std::size_t k) const
    {
        const Grid &g = grid();
        return weight * (z.real() * g.cos[k] + z.imag() * g.sin[k]);
    }

    /// f(a1) - f(a2) without subtracting two nearly equal rounded values:
    /// exp(-j a1) - exp(-j a2) = -2j sin((a1 - a2) / 2) exp(-j (a1 + a2) / 2).
    double difference(double a1, double a2) const
    {
        const double half_gap = 0.5 * (a1 - a2);
        const double centre = 0.5 * (a1 + a2);
        const Complex rotated = std::polar(1.0, -centre) * z;
        return weight * 2.0 * std::sin(half_gap) * rotated.imag();
    }
};

double maximize_chain(const ChainObjective &obj)
{
    std::size_t best = 0;
    double best_value = obj.value_at_grid(0);
    for (std::size_t k = 1; k < kGridPoints; ++k) {
        const double v = obj.value_at_grid(k);
        if (v > best_value) {
            best_value = v;
            best = k;
        }
    }

    // The objective is a single sinusoid, so it is unimodal on one grid step
    // either side of the best grid point.
    const double step = kTwoPi / static_cast<double>(kGridPoints);
    double lo = grid().angle[best] - step;
    double hi = grid().angle[best] + step;
    constexpr double ratio = std::numbers::phi - 1.0;
    while (hi - lo > kRefineTolerance) {
        const double x1 = hi - ratio * (hi - lo);
        const double x2 = lo + ratio * (hi - lo);
        if (obj.difference(x1, x2) < 0.0)
            lo = x1;
        else
            hi = x2;
    }
    return wrap_phase(0.5 * (lo + hi));
}

} // namespace

PhaseEstimate estimate_phase_moment(const ObservationSet &obs, const CVector &steering, Complex pilot)
{
    check_inputs(obs, steering, pilot);
    const CVector sum = obs.y.rowwise().sum();
    const double pilot_arg = std::arg(pilot);

    PhaseEstimate out;
    out.alpha_hat.resize(sum.size());
    for (Eigen::Index m = 0; m < sum.size(); ++m) {
        if (sum[m] == Complex(0.0, 0.0))
            throw DegenerateEstimate(static_cast<std::size_t>(m),
                                     "phase of chain " + std::to_string(m) + " undefined: snapshot sum is zero");
        out.alpha_hat[m] = wrap_phase(std::arg(sum[m]) - std::arg(steering[m]) - pilot_arg);
    }
    return out;
}

double log_likelihood(const ObservationSet &obs, const ParamVector &xi, const KnownQuantities &known)
{
    const std::size_t M = obs.antennas();
    const std::size_t T = obs.snapshots();
    if (xi.antennas() != M || known.snapshots != T)
        throw InvalidArgument("log_likelihood: parameter dimensions do not match the observation");

    const FrontEnd fe = xi.front_end();
    const Whitening w = dft_whitening(fe, xi.diffuse_power(), known);
    for (Eigen::Index i = 0; i < w.lambda.size(); ++i)
        if (!(w.lambda[i] > 0.0))
            throw NumericalDomain("log_likelihood: covariance is not positive definite");

    const CVector beta = obs.stacked() - build_mean(fe, xi.los_amplitude(), known);
    const CVector white = apply_temporal_dft(beta, M, T);

    const double MT = static_cast<double>(M * T);
    double log_det = 0.0;
    double quad = 0.0;
    for (Eigen::Index i = 0; i < w.lambda.size(); ++i) {
        log_det += std::log(w.lambda[i]);
        quad += std::norm(white[i]) / w.lambda[i];
    }
    return -MT * std::log(kPi) - log_det - quad;
}

double log_likelihood_dense(const ObservationSet &obs, const ParamVector &xi, const KnownQuantities &known)
{
    const std::size_t M = obs.antennas();
    const std::size_t T = obs.snapshots();
    if (xi.antennas() != M || known.snapshots != T)
        throw InvalidArgument("log_likelihood_dense: parameter dimensions do not match the observation");

    const FrontEnd fe = xi.front_end();
    const CMatrix C = build_covariance(fe, xi.diffuse_power(), known);
    const Eigen::LLT<CMatrix> llt(C);
    if (llt.info() != Eigen::Success)
        throw NumericalDomain("log_likelihood_dense: covariance is not positive definite");

    const CVector beta = obs.stacked() - build_mean(fe, xi.los_amplitude(), known);
    const CVector solved = llt.matrixL().solve(beta);
    const double log_det = 2.0 * llt.matrixL().toDenseMatrix().diagonal().real().array().log().sum();
    const double MT = static_cast<double>(M * T);
    return -MT * std::log(kPi) - log_det - solved.squaredNorm();
}

RVector likelihood_phase_weights(const ParamVector &xi, const KnownQuantities &known)
{
    const auto M = static_cast<Eigen::Index>(xi.antennas());
    const double T = static_cast<double>(known.snapshots);
    RVector w(M);
    for (Eigen::Index m = 0; m < M; ++m) {
        const double d = xi.amplitude(static_cast<std::size_t>(m));
        w[m] = d / (xi.diffuse_power() * T * d * d + known.noise_power);
    }
    return w;
}

PhaseEstimate estimate_phase_mle_numeric(const ObservationSet &obs, const CVector &steering, Complex pilot,
                                         const RVector &weights)
{
    check_inputs(obs, steering, pilot);
    const std::size_t M = obs.antennas();
    if (static_cast<std::size_t>(weights.size()) != M)
        throw InvalidArgument("estimate_phase_mle_numeric: weights length does not match M");
    for (Eigen::Index m = 0; m < weights.size(); ++m)
        if (!(weights[m] > 0.0) || !std::isfinite(weights[m]))
            throw InvalidArgument("estimate_phase_mle_numeric: weights must be positive and finite");

    const CVector white = apply_temporal_dft(obs.stacked(), M, obs.snapshots());

    PhaseEstimate out;
    out.alpha_hat.resize(static_cast<Eigen::Index>(M));
    for (Eigen::Index m = 0; m < static_cast<Eigen::Index>(M); ++m) {
        const Complex g = white[m];
        if (g == Complex(0.0, 0.0))
            throw DegenerateEstimate(static_cast<std::size_t>(m),
                                     "phase of chain " + std::to_string(m) + " undefined: whitened mean is zero");
        const ChainObjective obj{weights[m], std::conj(steering[m] * pilot) * g};
        out.alpha_hat[m] = maximize_chain(obj);
    }
    return out;
}

PhaseEstimate estimate_phase_mle_numeric(const ObservationSet &obs, const CVector &steering, Complex pilot)
{
    return estimate_phase_mle_numeric(obs, steering, pilot, RVector::Ones(static_cast<Eigen::Index>(obs.antennas())));
}

AmplitudeEstimate estimate_amplitude_moment(const SampleMoments &moments)
{
    const std::size_t T = moments.snapshots;
    if (T == 0 || moments.cross_blocks.size() != T * T)
        throw InvalidArgument("estimate_amplitude_moment: malformed sample moments");
    const Eigen::Index M = moments.cross_blocks.front().rows();

    // sum_t y_t (.) y_t^*: the diagonals of the auto blocks
    RVector auto_term = RVector::Zero(M);
    for (std::size_t t = 0; t < T; ++t)
        auto_term += moments.block(t, t).diagonal().real();

    // vecdiag of the off-diagonal (t, u) blocks
    CVector cross_term = CVector::Zero(M);
    for (std::size_t t = 0; t < T; ++t)
        for (std::size_t u = 0; u < T; ++u)
            if (u != t)
                cross_term += moments.block(t, u).diagonal();

    AmplitudeEstimate out;
    out.d_hat.resize(M);
    for (Eigen::Index m = 0; m < M; ++m)
        out.d_hat[m] = std::sqrt(std::max(0.0, auto_term[m] + cross_term[m].real()));
    return out;
}

} // namespace uecal
