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

#include "uecal/channel.hpp"
#include "uecal/core/types.hpp"

namespace uecal {

struct PhaseEstimate
{
    RVector alpha_hat; ///< radians, wrapped to (-pi, pi]
};

/// Amplitudes up to a common positive scale; only the direction is meaningful.
struct AmplitudeEstimate
{
    RVector d_hat;
};

/// alpha_hat = arg(sum_t y_t) - arg(a) - arg(p), elementwise and wrapped.
/// Throws DegenerateEstimate naming the first chain whose snapshot sum is zero.
PhaseEstimate estimate_phase_moment(const ObservationSet &obs, const CVector &steering, Complex pilot);

/// ln p(y; xi) = -MT ln(pi) - ln det C - beta^H C^{-1} beta, beta = y - mu(xi),
/// evaluated through the DFT whitening in O(M T^2).
/// Throws NumericalDomain when an eigenvalue of C is not positive.
double log_likelihood(const ObservationSet &obs, const ParamVector &xi, const KnownQuantities &known);

/// The same quantity from a dense Cholesky factorization of the MT x MT
/// covariance. Kept as an independent check on log_likelihood.
double log_likelihood_dense(const ObservationSet &obs, const ParamVector &xi, const KnownQuantities &known);

/// Per-chain likelihood weights d_m / (sigma^2 T d_m^2 + N0) at the true parameters.
/// Any positive weights give the same maximizer.
RVector likelihood_phase_weights(const ParamVector &xi, const KnownQuantities &known);

/// Maximizes, chain by chain, the only alpha-dependent likelihood term
///     w_m Re[ exp(-j alpha_m) conj(a_m p) g_m ],
/// where g is the first block of the DFT-whitened observation (the k = 0 mode,
/// sum_t y_t / sqrt(T)). Uses a 360-point grid over (-pi, pi] followed by
/// golden-section refinement to 1e-9 rad.
PhaseEstimate estimate_phase_mle_numeric(const ObservationSet &obs, const CVector &steering, Complex pilot,
                                         const RVector &weights);
PhaseEstimate estimate_phase_mle_numeric(const ObservationSet &obs, const CVector &steering, Complex pilot);

/// d_hat_m = sqrt(max(0, Re[ sum_t |y_t,m|^2 + sum_t sum_{u != t} (y_t y_u^H)_mm ])).
AmplitudeEstimate estimate_amplitude_moment(const SampleMoments &moments);

} // namespace uecal
