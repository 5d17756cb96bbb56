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

#include "uecal/crlb.hpp"

#include "uecal/core/error.hpp"
#include "uecal/model.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace uecal {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Relative size below which a Schur pivot counts as zero.
constexpr double kPivotTolerance = 1e-10;

void check_fim_inputs(const ParamVector &xi, const KnownQuantities &known)
{
    if (!(known.noise_power > 0.0))
        throw InvalidArgument("FIM requires N0 > 0");
    if (known.snapshots == 0)
        throw InvalidArgument("FIM requires T >= 1");
    if (static_cast<std::size_t>(known.steering.size()) != xi.antennas())
        throw InvalidArgument("steering vector length does not match the parameter vector");
}

FisherInfo empty_fim(std::size_t antennas)
{
    FisherInfo fi;
    fi.antennas = antennas;
    const auto n = static_cast<Eigen::Index>(2 * antennas + 2);
    fi.matrix = RMatrix::Zero(n, n);
    return fi;
}

void set_symmetric(RMatrix &m, std::size_t i, std::size_t j, double v)
{
    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
    m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
}

} // namespace

FisherInfo FimParts::total() const
{
    FisherInfo out = covariance;
    out.matrix += mean.matrix;
    return out;
}

FimParts fim_closed_form_parts(const ParamVector &xi, const KnownQuantities &known)
{
    check_fim_inputs(xi, known);
    const std::size_t M = xi.antennas();
    const double T = static_cast<double>(known.snapshots);
    const double n0 = known.noise_power;
    const double s2 = xi.diffuse_power();
    const double g = xi.los_amplitude();

    FimParts parts{empty_fim(M), empty_fim(M)};
    RMatrix &Ic = parts.covariance.matrix;
    RMatrix &Imu = parts.mean.matrix;
    const FisherInfo &ix = parts.covariance;

    double diffuse_diag = 0.0;
    double los_diag = 0.0;
    for (std::size_t m = 0; m < M; ++m) {
        const double d = xi.amplitude(m);
        const double d2 = d * d;
        // k = 0 eigenvalue of the stacked covariance for chain m
        const double lam = s2 * T * d2 + n0;
        const double lam2 = lam * lam;

        diffuse_diag += T * T * d2 * d2 / lam2;
        set_symmetric(Ic, ix.amplitude_index(m), ix.amplitude_index(m), 4.0 * s2 * s2 * T * T * d2 / lam2);
        set_symmetric(Ic, ix.diffuse_index(), ix.amplitude_index(m), 2.0 * s2 * T * T * d2 * d / lam2);

        set_symmetric(Imu, ix.amplitude_index(m), ix.amplitude_index(m), 2.0 * T * g * g / lam);
        set_symmetric(Imu, ix.amplitude_index(m), ix.los_index(), 2.0 * T * d * g / lam);
        set_symmetric(Imu, ix.phase_index(m), ix.phase_index(m), 2.0 * T * d2 * g * g / lam);
        los_diag += 2.0 * d2 * T / lam;
    }
    set_symmetric(Ic, ix.diffuse_index(), ix.diffuse_index(), diffuse_diag);
    set_symmetric(Imu, ix.los_index(), ix.los_index(), los_diag);
    return parts;
}

FisherInfo fim_closed_form(const ParamVector &xi, const KnownQuantities &known)
{
    return fim_closed_form_parts(xi, known).total();
}

FimStructure fim_structure(const ParamVector &xi, const KnownQuantities &known)
{
    const FisherInfo fi = fim_closed_form(xi, known);
    const auto M = static_cast<Eigen::Index>(xi.antennas());
    const auto at = [&](std::size_t i, std::size_t j) {
        return fi.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    };

    FimStructure s;
    s.amplitude_diag.resize(M);
    s.phase_diag.resize(M);
    s.amplitude_diffuse.resize(M);
    s.amplitude_los.resize(M);
    for (std::size_t m = 0; m < xi.antennas(); ++m) {
        const auto i = static_cast<Eigen::Index>(m);
        s.amplitude_diag[i] = at(fi.amplitude_index(m), fi.amplitude_index(m));
        s.phase_diag[i] = at(fi.phase_index(m), fi.phase_index(m));
        s.amplitude_diffuse[i] = at(fi.diffuse_index(), fi.amplitude_index(m));
        s.amplitude_los[i] = at(fi.amplitude_index(m), fi.los_index());
    }
    s.diffuse_diag = at(fi.diffuse_index(), fi.diffuse_index());
    s.los_diag = at(fi.los_index(), fi.los_index());
    return s;
}

CVector mean_derivative_numeric(const ParamVector &xi, const KnownQuantities &known, std::size_t index,
                                double relative_step)
{
    if (!(relative_step > 0.0))
        throw InvalidArgument("finite-difference step must be positive");
    const double h = relative_step * std::max(1.0, std::abs(xi[index]));
    ParamVector plus = xi, minus = xi;
    plus[index] += h;
    minus[index] -= h;
    const CVector mp = build_mean(plus.front_end(), plus.los_amplitude(), known);
    const CVector mm = build_mean(minus.front_end(), minus.los_amplitude(), known);
    return (mp - mm) / (2.0 * h);
}

CMatrix covariance_derivative_numeric(const ParamVector &xi, const KnownQuantities &known, std::size_t index,
                                      double relative_step)
{
    if (!(relative_step > 0.0))
        throw InvalidArgument("finite-difference step must be positive");
    const double h = relative_step * std::max(1.0, std::abs(xi[index]));
    ParamVector plus = xi, minus = xi;
    plus[index] += h;
    minus[index] -= h;
    const CMatrix cp = build_covariance(plus.front_end(), plus.diffuse_power(), known);
    const CMatrix cm = build_covariance(minus.front_end(), minus.diffuse_power(), known);
    for (const CMatrix *c : {&cp, &cm})
        if (Eigen::LLT<CMatrix>(*c).info() != Eigen::Success)
            throw NumericalDomain("covariance is not positive definite at a perturbed point (index " +
                                  std::to_string(index) + ")");
    return (cp - cm) / (2.0 * h);
}

FisherInfo fim_numeric(const ParamVector &xi, const KnownQuantities &known, double relative_step)
{
    check_fim_inputs(xi, known);
    const std::size_t n = xi.size();

    const CMatrix C = build_covariance(xi.front_end(), xi.diffuse_power(), known);
    const Eigen::LLT<CMatrix> llt(C);
    if (llt.info() != Eigen::Success)
        throw NumericalDomain("fim_numeric: covariance is not positive definite");

    std::vector<CMatrix> whitened_dc; // C^-1 dC_i
    std::vector<CVector> dmu;
    std::vector<CVector> whitened_dmu; // C^-1 dmu_i
    whitened_dc.reserve(n);
    dmu.reserve(n);
    whitened_dmu.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        whitened_dc.push_back(llt.solve(covariance_derivative_numeric(xi, known, i, relative_step)));
        dmu.push_back(mean_derivative_numeric(xi, known, i, relative_step));
        whitened_dmu.push_back(llt.solve(dmu.back()));
    }

    FisherInfo fi = empty_fim(xi.antennas());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            // Tr[A B] = sum_kl A_kl B_lk
            const Complex trace = whitened_dc[i].cwiseProduct(whitened_dc[j].transpose()).sum();
            const Complex mean_term = dmu[i].dot(whitened_dmu[j]); // dmu_i^H C^-1 dmu_j
            set_symmetric(fi.matrix, i, j, trace.real() + 2.0 * mean_term.real());
        }
    return fi;
}

namespace {

std::vector<Eigen::Index> gauge_indices(std::size_t antennas, ScaleGauge gauge)
{
    const std::size_t n = 2 * antennas + 2;
    std::vector<Eigen::Index> idx;
    for (std::size_t i = 0; i < n; ++i)
        if (gauge == ScaleGauge::None || i != n - 1)
            idx.push_back(static_cast<Eigen::Index>(i));
    return idx;
}

} // namespace

CrlbReport crlb_diagonal_exact(const FisherInfo &fi, ScaleGauge gauge)
{
    const std::size_t M = fi.antennas;
    if (fi.matrix.rows() != static_cast<Eigen::Index>(fi.size()) || fi.matrix.cols() != fi.matrix.rows())
        throw InvalidArgument("crlb_diagonal_exact: FIM has the wrong shape");

    const std::vector<Eigen::Index> idx = gauge_indices(M, gauge);
    const RMatrix sub = fi.matrix(idx, idx);

    const Eigen::JacobiSVD<RMatrix> svd(sub);
    const RVector &sv = svd.singularValues();
    const double smax = sv[0];
    const double smin = sv[sv.size() - 1];
    if (!(smin > 0.0) || smax / smin > kSingularConditionNumber)
        throw SingularFim("FIM is singular (condition number " + std::to_string(smin > 0.0 ? smax / smin : kInf) +
                          " > 1e12)");

    const RMatrix inv = sub.inverse();
    CrlbReport out;
    out.crlb_d.resize(static_cast<Eigen::Index>(M));
    out.crlb_alpha.resize(static_cast<Eigen::Index>(M));
    // Both gauges keep indices 0..2M in place; only gamma (last) may be dropped.
    for (std::size_t m = 0; m < M; ++m) {
        const auto di = static_cast<Eigen::Index>(fi.amplitude_index(m));
        const auto ai = static_cast<Eigen::Index>(fi.phase_index(m));
        out.crlb_d[static_cast<Eigen::Index>(m)] = inv(di, di);
        out.crlb_alpha[static_cast<Eigen::Index>(m)] = inv(ai, ai);
    }
    return out;
}

double los_schur_complement(const FimStructure &s)
{
    const RVector &phi = s.amplitude_diag;
    const RVector &varphi = s.amplitude_diffuse;
    const RVector &vartheta = s.amplitude_los;
    const double f1 = s.diffuse_diag - (varphi.array().square() / phi.array()).sum();
    const double a = (vartheta.array().square() / phi.array()).sum();
    const double b = (vartheta.array() * varphi.array() / phi.array()).sum();
    return s.los_diag - a - b * b / f1;
}

CrlbReport crlb_diagonal_schur(const ParamVector &xi, const KnownQuantities &known, ScaleGauge gauge)
{
    const FimStructure s = fim_structure(xi, known);
    const auto M = static_cast<Eigen::Index>(xi.antennas());
    const RVector &phi = s.amplitude_diag;
    const RVector &zeta = s.phase_diag;
    const RVector &varphi = s.amplitude_diffuse;
    const RVector &vartheta = s.amplitude_los;
    const double rho = s.diffuse_diag;
    const double w = s.los_diag;

    for (Eigen::Index j = 0; j < M; ++j) {
        if (!(phi[j] > 0.0))
            throw DegenerateSchur("amplitude pivot " + std::to_string(j) + " is zero");
        if (!(zeta[j] > 0.0))
            throw DegenerateSchur("phase pivot " + std::to_string(j) + " is zero (no LOS component)");
    }

    // Gaussian elimination of the d block out of the (d, sigma^2) arrowhead.
    const RVector varphi_sq_over_phi = varphi.array().square() / phi.array();
    const double f1 = rho - varphi_sq_over_phi.sum();
    if (!(std::abs(f1) > kPivotTolerance * rho))
        throw DegenerateSchur("sigma^2 pivot rho - sum(varphi^2 / phi) vanishes");

    CrlbReport out;
    out.chi.resize(2 * M);
    out.chi_prime.resize(2 * M);
    for (Eigen::Index i = 0; i < M; ++i) {
        const double f2 = f1 + varphi_sq_over_phi[i]; // rho - sum_{j != i} varphi_j^2 / phi_j
        out.chi[i] = f2 / (phi[i] * f1);
        out.chi[M + i] = 1.0 / zeta[i];
        out.chi_prime[M + i] = 1.0;
    }

    if (gauge == ScaleGauge::PinLosAmplitude) {
        out.chi_prime.head(M).setOnes();
    } else {
        const RVector vartheta_sq_over_phi = vartheta.array().square() / phi.array();
        const RVector cross_over_phi = vartheta.array() * varphi.array() / phi.array();
        const double a = vartheta_sq_over_phi.sum();
        const double b = cross_over_phi.sum();
        const double denominator = w - a - b * b / f1;
        if (!(std::abs(denominator) > 1e-9 * w))
            throw DegenerateSchur("gamma Schur complement w - psi^T X^-1 psi vanishes; the FIM is rank-deficient "
                                  "along the (d, sigma^2, gamma) scale direction");
        for (Eigen::Index i = 0; i < M; ++i) {
            const double f2 = f1 + varphi_sq_over_phi[i];
            const double ai = a - vartheta_sq_over_phi[i];
            const double bi = b - cross_over_phi[i];
            out.chi_prime[i] = (w - ai - bi * bi / f2) / denominator;
        }
    }

    out.crlb_d = out.chi.head(M).cwiseProduct(out.chi_prime.head(M));
    out.crlb_alpha = out.chi.tail(M).cwiseProduct(out.chi_prime.tail(M));
    return out;
}

CrlbReport crlb_high_snr(const ParamVector &xi, std::size_t snapshots)
{
    const auto M = static_cast<Eigen::Index>(xi.antennas());
    const double T = static_cast<double>(snapshots);
    const double s2 = xi.diffuse_power();
    const double g2 = xi.los_amplitude() * xi.los_amplitude();
    const double Md = static_cast<double>(M);

    CrlbReport out;
    out.epsilon = 2.0 * T * g2 + (4.0 * T * T - 1.0) * s2;
    const double eps = out.epsilon;
    out.chi_prime_high_snr = eps * (s2 * Md * (2.0 * eps - g2) + 2.0 * s2 * s2 + g2 * eps + 2.0 * g2 * s2) /
                             (s2 * (2.0 * eps - g2) * (Md * eps + s2));

    out.high_snr_alpha = RVector::Constant(M, g2 > 0.0 ? s2 / (2.0 * g2) : kInf);
    out.high_snr_d.resize(M);
    const double d_denominator = 2.0 * (g2 + 2.0 * s2);
    for (Eigen::Index m = 0; m < M; ++m) {
        const double d = xi.amplitude(static_cast<std::size_t>(m));
        out.high_snr_d[m] = d_denominator > 0.0 ? s2 * d * d / d_denominator : kInf;
    }
    return out;
}

RVector phase_crlb(const ParamVector &xi, const KnownQuantities &known)
{
    check_fim_inputs(xi, known);
    const auto M = static_cast<Eigen::Index>(xi.antennas());
    const double T = static_cast<double>(known.snapshots);
    const double s2 = xi.diffuse_power();
    const double g = xi.los_amplitude();
    RVector out(M);
    for (Eigen::Index m = 0; m < M; ++m) {
        const double d = xi.amplitude(static_cast<std::size_t>(m));
        const double info = 2.0 * T * d * d * g * g / (known.noise_power + s2 * T * d * d);
        out[m] = info > 0.0 ? 1.0 / info : kInf;
    }
    return out;
}

} // namespace uecal
