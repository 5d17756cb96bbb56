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

#include "uecal/core/types.hpp"

#include "uecal/core/error.hpp"
#include "uecal/core/phase.hpp"
#include "uecal/model.hpp"

#include <cmath>
#include <string>

namespace uecal {

const char *to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::DegenerateEstimate: return "degenerate-estimate";
    case ErrorKind::NumericalDomain: return "numerical-domain";
    case ErrorKind::SingularFim: return "singular-fim";
    case ErrorKind::DegenerateSchur: return "degenerate-schur";
    case ErrorKind::InvalidConfig: return "invalid-config";
    case ErrorKind::Io: return "io";
    }
    return "unknown";
}

FrontEnd::FrontEnd(RVector d, RVector alpha) : amplitude(std::move(d)), phase(std::move(alpha)) {}

FrontEnd FrontEnd::identity(std::size_t antennas)
{
    const auto n = static_cast<Eigen::Index>(antennas);
    return FrontEnd(RVector::Ones(n), RVector::Zero(n));
}

Complex FrontEnd::coefficient(std::size_t m) const
{
    const auto i = static_cast<Eigen::Index>(m);
    return std::polar(amplitude[i], phase[i]);
}

CVector FrontEnd::coefficients() const
{
    CVector out(amplitude.size());
    for (Eigen::Index i = 0; i < amplitude.size(); ++i)
        out[i] = std::polar(amplitude[i], phase[i]);
    return out;
}

void FrontEnd::validate() const
{
    if (amplitude.size() == 0)
        throw InvalidArgument("FrontEnd: at least one RF chain is required");
    if (amplitude.size() != phase.size())
        throw InvalidArgument("FrontEnd: amplitude and phase lengths differ");
    for (Eigen::Index i = 0; i < amplitude.size(); ++i) {
        if (!(amplitude[i] > 0.0) || !std::isfinite(amplitude[i]))
            throw InvalidArgument("FrontEnd: amplitude " + std::to_string(i) + " must be positive");
        if (!std::isfinite(phase[i]) || phase[i] <= -kPi || phase[i] > kPi)
            throw InvalidArgument("FrontEnd: phase " + std::to_string(i) + " outside (-pi, pi]");
    }
}

void Scenario::validate() const
{
    if (antennas == 0)
        throw InvalidArgument("Scenario: M must be at least 1");
    if (snapshots == 0)
        throw InvalidArgument("Scenario: T must be at least 1");
    if (!(los_amplitude >= 0.0) || !(diffuse_power >= 0.0) || !(noise_power >= 0.0))
        throw InvalidArgument("Scenario: gamma, sigma2 and n0 must be nonnegative");
    if (!std::isfinite(los_amplitude) || !std::isfinite(diffuse_power) || !std::isfinite(noise_power))
        throw InvalidArgument("Scenario: gamma, sigma2 and n0 must be finite");
    if (std::abs(std::abs(pilot) - 1.0) > 1e-12)
        throw InvalidArgument("Scenario: pilot must have unit modulus");
    if (!(spacing > 0.0) || !std::isfinite(spacing))
        throw InvalidArgument("Scenario: element spacing must be positive");
    if (!(aoa >= -kPi / 2 - 1e-12 && aoa <= kPi / 2 + 1e-12))
        throw InvalidArgument("Scenario: angle of arrival outside [-pi/2, pi/2]");
}

void Scenario::validate_for_estimation() const
{
    validate();
    if (los_amplitude == 0.0 && diffuse_power == 0.0 && noise_power == 0.0)
        throw InvalidArgument("Scenario: gamma, sigma2 and n0 are all zero");
}

ParamVector::ParamVector(std::size_t antennas)
    : antennas_(antennas), values_(RVector::Zero(static_cast<Eigen::Index>(2 * antennas + 2)))
{
    if (antennas == 0)
        throw InvalidArgument("ParamVector: M must be at least 1");
}

ParamVector::ParamVector(const FrontEnd &fe, double diffuse_power, double los_amplitude)
    : ParamVector(fe.size())
{
    if (fe.phase.size() != fe.amplitude.size())
        throw InvalidArgument("ParamVector: amplitude and phase lengths differ");
    for (std::size_t m = 0; m < antennas_; ++m) {
        (*this)[amplitude_index(m)] = fe.amplitude[static_cast<Eigen::Index>(m)];
        (*this)[phase_index(m)] = fe.phase[static_cast<Eigen::Index>(m)];
    }
    (*this)[diffuse_index()] = diffuse_power;
    (*this)[los_index()] = los_amplitude;
}

FrontEnd ParamVector::front_end() const
{
    const auto n = static_cast<Eigen::Index>(antennas_);
    FrontEnd fe{RVector(n), RVector(n)};
    for (std::size_t m = 0; m < antennas_; ++m) {
        fe.amplitude[static_cast<Eigen::Index>(m)] = amplitude(m);
        fe.phase[static_cast<Eigen::Index>(m)] = phase(m);
    }
    return fe;
}

KnownQuantities KnownQuantities::from(const Scenario &scenario)
{
    KnownQuantities known;
    known.snapshots = scenario.snapshots;
    known.noise_power = scenario.noise_power;
    known.steering = steering_vector(scenario.aoa, scenario.antennas, scenario.spacing);
    known.pilot = scenario.pilot;
    return known;
}

} // namespace uecal
