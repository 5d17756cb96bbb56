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

#include <cmath>
#include <cstddef>

/// The stacked Gaussian observation model: y ~ CN(mu(xi), C(xi)) with the
/// T snapshots of length M stacked block by block (index t*M + m).
namespace uecal {

/// exp(-j 2 pi spacing (m-1) cos(phi)) for m = 1..M. Throws InvalidArgument
/// for M == 0 or non-positive spacing.
CVector steering_vector(double aoa, std::size_t antennas, double spacing = 0.5);

struct StackedModel
{
    CVector mean;       ///< length MT
    CMatrix covariance; ///< MT x MT, Hermitian
};

/// 1_T (x) gamma p D a(phi)
CVector build_mean(const Scenario &scenario, const FrontEnd &fe);
CVector build_mean(const FrontEnd &fe, double los_amplitude, const KnownQuantities &known);

/// I_T (x) N0 I_M + 1 1^T (x) sigma^2 D D^H
CMatrix build_covariance(const Scenario &scenario, const FrontEnd &fe);
CMatrix build_covariance(const FrontEnd &fe, double diffuse_power, const KnownQuantities &known);

StackedModel build_stacked_model(const Scenario &scenario, const FrontEnd &fe);

/// Block-diagonalization of the stacked covariance by the temporal DFT:
/// C = transform^H * diag(lambda) * transform, transform = Q (x) I_M with
/// Q[k, t] = exp(-j 2 pi k t / T) / sqrt(T).
///
/// The first M eigenvalues are sigma^2 T d_m^2 + N0 (the k = 0 mode, which
/// carries all temporally coherent energy); the remaining M(T-1) are N0.
struct Whitening
{
    CMatrix transform;
    RVector lambda;

    RMatrix lambda_matrix() const { return lambda.asDiagonal(); }
};

Whitening dft_whitening(const Scenario &scenario, const FrontEnd &fe);
Whitening dft_whitening(const FrontEnd &fe, double diffuse_power, const KnownQuantities &known);

/// Normalized T-point DFT matrix, Q[k, t] = exp(-j 2 pi k t / T) / sqrt(T).
CMatrix dft_matrix(std::size_t points);

/// Applies Q (x) I_M to a stacked vector in O(M T^2) without forming the MT x MT matrix.
CVector apply_temporal_dft(const CVector &stacked, std::size_t antennas, std::size_t snapshots);

/// N0 = sum_m d_m^2 (sigma^2 + gamma^2) / (M snr). Throws InvalidArgument when snr <= 0.
double noise_power_for_snr(double snr, const FrontEnd &fe, double diffuse_power, double los_amplitude);

/// Inverse of noise_power_for_snr.
double snr_for_noise_power(double noise_power, const FrontEnd &fe, double diffuse_power, double los_amplitude);

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

} // namespace uecal
