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

#include <Eigen/Dense>

#include <complex>
#include <cstddef>

namespace uecal {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;

/// Per-chain amplitude scaling and phase drift, i.e. the diagonal of the
/// front-end matrix D = diag(d_m exp(j alpha_m)).
struct FrontEnd
{
    RVector amplitude; ///< d_m > 0
    RVector phase;     ///< alpha_m in (-pi, pi]

    FrontEnd() = default;
    FrontEnd(RVector d, RVector alpha);

    /// Unit amplitudes and zero phases.
    static FrontEnd identity(std::size_t antennas);

    std::size_t size() const { return static_cast<std::size_t>(amplitude.size()); }

    /// d_m exp(j alpha_m)
    Complex coefficient(std::size_t m) const;
    CVector coefficients() const;

    /// Throws InvalidArgument when the invariants do not hold.
    void validate() const;
};

/// Everything about one calibration experiment except the front-end itself.
/// Powers are linear; `aoa` is in radians; `spacing` is in carrier wavelengths.
struct Scenario
{
    std::size_t antennas = 1;
    std::size_t snapshots = 1;
    double los_amplitude = 0.0; ///< gamma
    double diffuse_power = 0.0; ///< sigma^2
    double noise_power = 0.0;   ///< N0, total per-element complex noise variance
    double aoa = 0.0;           ///< phi
    Complex pilot{1.0, 0.0};
    double spacing = 0.5;

    void validate() const;
    /// Additionally requires that at least one of gamma, sigma^2, N0 is nonzero.
    void validate_for_estimation() const;
};

/// The unknown vector in block order (d_1..d_M, sigma^2, alpha_1..alpha_M, gamma).
/// Index helpers are zero-based.
class ParamVector
{
public:
    explicit ParamVector(std::size_t antennas);
    ParamVector(const FrontEnd &fe, double diffuse_power, double los_amplitude);

    std::size_t antennas() const { return antennas_; }
    std::size_t size() const { return 2 * antennas_ + 2; }

    std::size_t amplitude_index(std::size_t m) const { return m; }
    std::size_t diffuse_index() const { return antennas_; }
    std::size_t phase_index(std::size_t m) const { return antennas_ + 1 + m; }
    std::size_t los_index() const { return 2 * antennas_ + 1; }

    double amplitude(std::size_t m) const { return values_[amplitude_index(m)]; }
    double diffuse_power() const { return values_[diffuse_index()]; }
    double phase(std::size_t m) const { return values_[phase_index(m)]; }
    double los_amplitude() const { return values_[los_index()]; }

    double &operator[](std::size_t i) { return values_[static_cast<Eigen::Index>(i)]; }
    double operator[](std::size_t i) const { return values_[static_cast<Eigen::Index>(i)]; }

    const RVector &values() const { return values_; }

    /// Front-end view of the d and alpha blocks. Phases are copied verbatim (not
    /// wrapped) so that finite-difference perturbations survive the round trip.
    FrontEnd front_end() const;

private:
    std::size_t antennas_;
    RVector values_;
};

/// Quantities the base station knows when it evaluates the likelihood or the FIM.
struct KnownQuantities
{
    std::size_t snapshots = 1;
    double noise_power = 0.0;
    CVector steering;
    Complex pilot{1.0, 0.0};

    static KnownQuantities from(const Scenario &scenario);
};

} // namespace uecal
