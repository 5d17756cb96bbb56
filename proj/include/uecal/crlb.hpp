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
#include <vector>

/// Fisher information and Cramer-Rao bounds for the stacked Ricean model.
///
/// Parameters use the ParamVector block layout (d, sigma^2, alpha, gamma). Note
/// that the model is invariant under (d, sigma^2, gamma) -> (c d, sigma^2 / c^2,
/// gamma / c): the full (2M+2) x (2M+2) FIM always has the null vector
/// (d, -2 sigma^2, 0, -gamma). Bounds on d therefore only exist once that scale is
/// pinned; see ScaleGauge.
namespace uecal {

enum class ScaleGauge {
    /// Treat gamma as known: drop its row and column before inverting. This is
    /// the constrained bound for the gauge gamma = const, and the default.
    PinLosAmplitude,
    /// Use the full FIM as-is. Always singular; exposed to exercise the error paths.
    None,
};

struct FisherInfo
{
    RMatrix matrix;
    std::size_t antennas = 0;

    std::size_t size() const { return 2 * antennas + 2; }
    std::size_t amplitude_index(std::size_t m) const { return m; }
    std::size_t diffuse_index() const { return antennas; }
    std::size_t phase_index(std::size_t m) const { return antennas + 1 + m; }
    std::size_t los_index() const { return 2 * antennas + 1; }
};

/// Covariance-derived and mean-derived halves of the FIM; `total()` is their sum.
struct FimParts
{
    FisherInfo covariance;
    FisherInfo mean;

    FisherInfo total() const;
};

/// The nonzero closed-form entries, grouped the way the Schur-complement
/// formulas consume them. Vectors have length M.
struct FimStructure
{
    RVector amplitude_diag;    ///< [I]_{d_m, d_m}, mean plus covariance part
    RVector phase_diag;        ///< [I]_{alpha_m, alpha_m}
    RVector amplitude_diffuse; ///< [I]_{sigma^2, d_m}
    RVector amplitude_los;     ///< [I]_{d_m, gamma}
    double diffuse_diag = 0.0; ///< [I]_{sigma^2, sigma^2}
    double los_diag = 0.0;     ///< [I]_{gamma, gamma}
};

/// Throws InvalidArgument when N0 <= 0 or dimensions disagree.
FimStructure fim_structure(const ParamVector &xi, const KnownQuantities &known);
FimParts fim_closed_form_parts(const ParamVector &xi, const KnownQuantities &known);
FisherInfo fim_closed_form(const ParamVector &xi, const KnownQuantities &known);

/// General complex-Gaussian FIM
///     I_ij = Tr[C^-1 dC_i C^-1 dC_j] + 2 Re[dmu_i^H C^-1 dmu_j]
/// with dmu and dC from central differences of build_mean/build_covariance,
/// step h_i = relative_step * max(1, |xi_i|). Independent of the closed form.
/// Throws NumericalDomain when C is not positive definite at any evaluated point.
FisherInfo fim_numeric(const ParamVector &xi, const KnownQuantities &known, double relative_step = 1e-5);

/// Central-difference derivatives of the stacked mean and covariance.
CVector mean_derivative_numeric(const ParamVector &xi, const KnownQuantities &known, std::size_t index,
                                double relative_step = 1e-5);
CMatrix covariance_derivative_numeric(const ParamVector &xi, const KnownQuantities &known, std::size_t index,
                                      double relative_step = 1e-5);

struct CrlbReport
{
    RVector crlb_alpha; ///< rad^2, per chain
    RVector crlb_d;     ///< per chain

    // Schur-path intermediates, ordered [d_1..d_M, alpha_1..alpha_M].
    RVector chi;
    RVector chi_prime;

    // High-SNR forms.
    RVector high_snr_alpha;          ///< sigma^2 / (2 gamma^2), +inf when gamma = 0
    RVector high_snr_d;              ///< sigma^2 d^2 / (2 (gamma^2 + 2 sigma^2))
    double epsilon = 0.0;            ///< 2 T gamma^2 + (4 T^2 - 1) sigma^2
    double chi_prime_high_snr = 0.0; ///< chi'_i (i <= M) when N0 << sigma^2 T d^2
};

/// Condition number above which a FIM is declared singular.
inline constexpr double kSingularConditionNumber = 1e12;

/// d and alpha diagonals of the numerical inverse of the (gauged) FIM.
/// Throws SingularFim when its condition number exceeds kSingularConditionNumber.
CrlbReport crlb_diagonal_exact(const FisherInfo &fi, ScaleGauge gauge = ScaleGauge::PinLosAmplitude);

/// Diagonal bounds as chi_i * chi'_i from the Gaussian-elimination and
/// block-inversion formulas, without inverting anything larger than a scalar.
/// Throws DegenerateSchur when a pivot of those formulas vanishes (sigma^2 = 0,
/// gamma = 0, or gauge None where the gamma Schur complement is identically zero).
CrlbReport crlb_diagonal_schur(const ParamVector &xi, const KnownQuantities &known,
                               ScaleGauge gauge = ScaleGauge::PinLosAmplitude);

/// w - psi^T X^{-1} psi: the Schur complement of everything else in the gamma
/// entry. Zero up to rounding for every input, which is the scale invariance above.
double los_schur_complement(const FimStructure &s);

/// High-SNR closed forms; fills the high_snr_* fields, epsilon and chi_prime_high_snr.
CrlbReport crlb_high_snr(const ParamVector &xi, std::size_t snapshots);

/// Phase bound per chain, (N0 + sigma^2 T d^2) / (2 T d^2 gamma^2). The phase
/// block decouples from everything else, so this is exact under any gauge.
/// Returns +inf for chains with no phase information (gamma = 0).
RVector phase_crlb(const ParamVector &xi, const KnownQuantities &known);

} // namespace uecal
