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

#include "helpers.hpp"

#include "uecal/core/error.hpp"
#include "uecal/crlb.hpp"
#include "uecal/model.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <limits>

using namespace uecal;
using namespace uecal::test;

namespace {

struct Instance
{
    ParamVector xi;
    KnownQuantities known;
};

Instance random_instance(std::mt19937_64 &rng, std::size_t M, std::size_t T)
{
    const Scenario sc = random_scenario(rng, M, T);
    return {ParamVector(random_front_end(rng, M), sc.diffuse_power, sc.los_amplitude), KnownQuantities::from(sc)};
}

Instance unit_instance(std::size_t M, std::size_t T, double gamma, double sigma2, double n0)
{
    const Scenario sc = make_scenario(M, T, gamma, sigma2, n0);
    return {ParamVector(FrontEnd::identity(M), sigma2, gamma), KnownQuantities::from(sc)};
}

} // namespace

TEST_CASE("closed-form FIM hand-evaluated scalar entries", "[crlb]")
{
    const Instance in = unit_instance(1, 1, 1.0, 1.0, 1.0);
    const FimParts parts = fim_closed_form_parts(in.xi, in.known);
    const RMatrix &C = parts.covariance.matrix;
    const RMatrix &U = parts.mean.matrix;
    const std::size_t d = 0, s2 = 1, a = 2, g = 3;
    CHECK_THAT(C(s2, s2), WithinAbs(0.25, 1e-15));
    CHECK_THAT(C(d, d), WithinAbs(1.0, 1e-15));
    CHECK_THAT(C(s2, d), WithinAbs(0.5, 1e-15));
    CHECK_THAT(U(a, a), WithinAbs(1.0, 1e-15));
    CHECK_THAT(U(g, g), WithinAbs(1.0, 1e-15));
    CHECK_THAT(U(d, d), WithinAbs(1.0, 1e-15));
    CHECK_THAT(U(d, g), WithinAbs(1.0, 1e-15));
    CHECK(parts.total().matrix == C + U);
}

TEST_CASE("closed-form FIM without LOS has no mean information", "[crlb]")
{
    std::mt19937_64 rng(1);
    Instance in = random_instance(rng, 4, 3);
    in.xi[in.xi.los_index()] = 0.0;
    const FimParts parts = fim_closed_form_parts(in.xi, in.known);
    // only the LOS amplitude itself still moves the mean
    RMatrix mean = parts.mean.matrix;
    const auto g = static_cast<Eigen::Index>(in.xi.los_index());
    CHECK(mean(g, g) > 0.0);
    mean(g, g) = 0.0;
    CHECK(mean.cwiseAbs().maxCoeff() == 0.0);
    const RMatrix I = parts.total().matrix;
    for (std::size_t m = 0; m < 4; ++m) {
        const auto ai = static_cast<Eigen::Index>(in.xi.phase_index(m));
        CHECK(I.row(ai).cwiseAbs().maxCoeff() == 0.0);
        CHECK(I.col(ai).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("closed-form FIM structure", "[crlb][property]")
{
    std::mt19937_64 rng(2);
    for (int i = 0; i < 20; ++i) {
        const std::size_t M = 1 + rng() % 8;
        const Instance in = random_instance(rng, M, 1 + rng() % 5);
        const FisherInfo fi = fim_closed_form(in.xi, in.known);
        const RMatrix &I = fi.matrix;
        REQUIRE(I.rows() == static_cast<Eigen::Index>(2 * M + 2));
        REQUIRE((I - I.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * I.cwiseAbs().maxCoeff());
        const double lmin = Eigen::SelfAdjointEigenSolver<RMatrix>(I).eigenvalues().minCoeff();
        REQUIRE(lmin >= -1e-10 * I.cwiseAbs().maxCoeff());
        for (std::size_t k = 0; k < M; ++k) {
            const auto ak = static_cast<Eigen::Index>(fi.phase_index(k));
            for (Eigen::Index j = 0; j < I.cols(); ++j)
                if (j != ak)
                    REQUIRE(I(ak, j) == 0.0);
        }
    }
}

TEST_CASE("the full FIM has the scale-invariance null vector", "[crlb][property]")
{
    std::mt19937_64 rng(3);
    for (int i = 0; i < 10; ++i) {
        const std::size_t M = 1 + rng() % 8;
        const Instance in = random_instance(rng, M, 1 + rng() % 5);
        const FisherInfo fi = fim_closed_form(in.xi, in.known);
        RVector v = RVector::Zero(static_cast<Eigen::Index>(fi.size()));
        for (std::size_t m = 0; m < M; ++m)
            v[static_cast<Eigen::Index>(m)] = in.xi.amplitude(m);
        v[static_cast<Eigen::Index>(fi.diffuse_index())] = -2.0 * in.xi.diffuse_power();
        v[static_cast<Eigen::Index>(fi.los_index())] = -in.xi.los_amplitude();
        REQUIRE((fi.matrix * v).norm() <= 1e-12 * fi.matrix.norm() * v.norm());

        const FimStructure s = fim_structure(in.xi, in.known);
        REQUIRE(std::abs(los_schur_complement(s)) <= 1e-10 * s.los_diag);
    }
}

TEST_CASE("closed-form FIM input checks", "[crlb]")
{
    Instance in = unit_instance(3, 2, 1.0, 1.0, 0.0);
    CHECK_THROWS_AS(fim_closed_form(in.xi, in.known), InvalidArgument);
    in.known.noise_power = -1.0;
    CHECK_THROWS_AS(fim_structure(in.xi, in.known), InvalidArgument);
    in.known.noise_power = 1.0;
    in.known.steering = steering_vector(0.0, 2);
    CHECK_THROWS_AS(fim_closed_form(in.xi, in.known), InvalidArgument);
}

TEST_CASE("finite-difference derivatives of the covariance", "[crlb]")
{
    std::mt19937_64 rng(4);
    const Instance in = random_instance(rng, 3, 3);
    const double scale = build_covariance(in.xi.front_end(), in.xi.diffuse_power(), in.known).cwiseAbs().maxCoeff();

    const CMatrix dC_gamma = covariance_derivative_numeric(in.xi, in.known, in.xi.los_index());
    CHECK(dC_gamma.cwiseAbs().maxCoeff() <= 1e-10 * scale);
    const CMatrix dC_alpha = covariance_derivative_numeric(in.xi, in.known, in.xi.phase_index(1));
    CHECK(dC_alpha.cwiseAbs().maxCoeff() <= 1e-8 * scale);

    const CVector D = in.xi.front_end().coefficients();
    const CMatrix block = D.cwiseAbs2().cast<Complex>().asDiagonal();
    const CMatrix expected = Eigen::kroneckerProduct(CMatrix::Ones(3, 3), block).eval();
    const CMatrix dC_sigma = covariance_derivative_numeric(in.xi, in.known, in.xi.diffuse_index());
    CHECK(max_abs_diff(dC_sigma, expected) <= 1e-8);
}

TEST_CASE("closed-form FIM matches the finite-difference oracle", "[crlb][property]")
{
    std::mt19937_64 rng(5);
    for (int i = 0; i < 5; ++i) {
        const Instance in = random_instance(rng, 4, 3);
        const RMatrix closed = fim_closed_form(in.xi, in.known).matrix;
        const RMatrix numeric = fim_numeric(in.xi, in.known).matrix;
        for (Eigen::Index r = 0; r < closed.rows(); ++r)
            for (Eigen::Index c = 0; c < closed.cols(); ++c) {
                if (closed(r, c) != 0.0)
                    REQUIRE_THAT(numeric(r, c), WithinRel(closed(r, c), 1e-4));
                else
                    REQUIRE(std::abs(numeric(r, c)) < 1e-6);
            }
    }
}

TEST_CASE("finite-difference FIM rejects a non-positive-definite model", "[crlb]")
{
    Instance bad = unit_instance(2, 2, 1.0, 0.0, 1e-12);
    bad.known.noise_power = 1e-7;
    bad.xi[bad.xi.diffuse_index()] = -1e-3;
    CHECK_THROWS_AS(fim_numeric(bad.xi, bad.known), NumericalDomain);
}

TEST_CASE("exact phase bound equals the decoupled formula", "[crlb]")
{
    SECTION("spot value")
    {
        const Instance in = unit_instance(1, 3, 1.0, 1.0, 1.0);
        const CrlbReport r = crlb_diagonal_exact(fim_closed_form(in.xi, in.known));
        CHECK_THAT(r.crlb_alpha[0], WithinRel(2.0 / 3.0, 1e-12));
        CHECK_THAT(phase_crlb(in.xi, in.known)[0], WithinRel(2.0 / 3.0, 1e-15));
    }
    SECTION("random instances")
    {
        std::mt19937_64 rng(6);
        for (int i = 0; i < 10; ++i) {
            const Instance in = random_instance(rng, 6, 3);
            const CrlbReport r = crlb_diagonal_exact(fim_closed_form(in.xi, in.known));
            const RVector decoupled = phase_crlb(in.xi, in.known);
            for (Eigen::Index m = 0; m < 6; ++m)
                REQUIRE_THAT(r.crlb_alpha[m], WithinRel(decoupled[m], 1e-10));
        }
    }
}

TEST_CASE("singular FIMs are reported", "[crlb]")
{
    std::mt19937_64 rng(7);
    SECTION("no LOS")
    {
        Instance in = random_instance(rng, 4, 3);
        in.xi[in.xi.los_index()] = 0.0;
        CHECK_THROWS_AS(crlb_diagonal_exact(fim_closed_form(in.xi, in.known)), SingularFim);
        CHECK_THROWS_AS(crlb_diagonal_schur(in.xi, in.known), DegenerateSchur);
        CHECK(std::isinf(phase_crlb(in.xi, in.known)[0]));
    }
    SECTION("ungauged")
    {
        const Instance in = random_instance(rng, 4, 3);
        CHECK_THROWS_AS(crlb_diagonal_exact(fim_closed_form(in.xi, in.known), ScaleGauge::None), SingularFim);
        CHECK_THROWS_AS(crlb_diagonal_schur(in.xi, in.known, ScaleGauge::None), DegenerateSchur);
    }
    SECTION("no diffuse power stays regular once gamma is pinned")
    {
        Instance in = random_instance(rng, 4, 3);
        in.xi[in.xi.diffuse_index()] = 0.0;
        const CrlbReport exact = crlb_diagonal_exact(fim_closed_form(in.xi, in.known));
        const CrlbReport schur = crlb_diagonal_schur(in.xi, in.known);
        for (Eigen::Index m = 0; m < 4; ++m) {
            CHECK_THAT(schur.crlb_d[m], WithinRel(exact.crlb_d[m], 1e-8));
            CHECK_THAT(schur.crlb_alpha[m], WithinRel(exact.crlb_alpha[m], 1e-8));
        }
    }
}

TEST_CASE("Schur-path bounds match the dense inverse", "[crlb][property]")
{
    std::mt19937_64 rng(8);
    for (std::size_t M : {1u, 4u, 6u, 16u}) {
        for (int i = 0; i < 5; ++i) {
            const Instance in = random_instance(rng, M, 3);
            const CrlbReport exact = crlb_diagonal_exact(fim_closed_form(in.xi, in.known));
            const CrlbReport schur = crlb_diagonal_schur(in.xi, in.known);
            for (Eigen::Index m = 0; m < static_cast<Eigen::Index>(M); ++m) {
                REQUIRE_THAT(schur.crlb_d[m], WithinRel(exact.crlb_d[m], 1e-8));
                REQUIRE_THAT(schur.crlb_alpha[m], WithinRel(exact.crlb_alpha[m], 1e-8));
            }
            const FimStructure s = fim_structure(in.xi, in.known);
            for (Eigen::Index m = 0; m < static_cast<Eigen::Index>(M); ++m) {
                REQUIRE(schur.chi_prime[static_cast<Eigen::Index>(M) + m] == 1.0);
                REQUIRE(schur.chi[static_cast<Eigen::Index>(M) + m] == 1.0 / s.phase_diag[m]);
            }
        }
    }
}

TEST_CASE("high-SNR closed forms", "[crlb]")
{
    const ParamVector strong(FrontEnd::identity(5), 1.0, 2.0);
    const CrlbReport a = crlb_high_snr(strong, 3);
    for (Eigen::Index m = 0; m < 5; ++m)
        CHECK_THAT(a.high_snr_alpha[m], WithinAbs(0.125, 1e-15));
    CHECK_THAT(a.epsilon, WithinAbs(2.0 * 3 * 4 + 35.0, 1e-12));

    const ParamVector unit(FrontEnd::identity(5), 1.0, 1.0);
    CHECK_THAT(crlb_high_snr(unit, 3).high_snr_d[0], WithinAbs(1.0 / 6.0, 1e-15));

    const ParamVector dark(FrontEnd::identity(5), 1.0, 0.0);
    const CrlbReport z = crlb_high_snr(dark, 3);
    CHECK(std::isinf(z.high_snr_alpha[0]));
    CHECK(z.high_snr_alpha[0] > 0.0);
}

TEST_CASE("chi-prime is close to one at high SNR with many antennas", "[crlb]")
{
    const std::size_t M = 100;
    const double n0 = noise_power_for_snr(db_to_linear(30.0), FrontEnd::identity(M), 1.0, 1.0);
    const Instance in = unit_instance(M, 3, 1.0, 1.0, n0);
    const CrlbReport r = crlb_diagonal_schur(in.xi, in.known);
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(M); ++i) {
        REQUIRE(r.chi_prime[i] >= 0.95);
        REQUIRE(r.chi_prime[i] <= 1.05);
    }
    const double approx = crlb_high_snr(in.xi, 3).chi_prime_high_snr;
    CHECK(approx >= 0.95);
    CHECK(approx <= 1.05);
}

TEST_CASE("phase bound monotonicity", "[crlb][property]")
{
    const KnownQuantities known = KnownQuantities::from(make_scenario(4, 3, 1.0, 1.0, 0.5));
    double previous = std::numeric_limits<double>::infinity();
    for (double g = 0.25; g <= 3.0; g += 0.25) {
        const double b = phase_crlb(ParamVector(FrontEnd::identity(4), 1.0, g), known)[0];
        REQUIRE(b < previous);
        previous = b;
    }
    previous = 0.0;
    for (double s2 = 0.0; s2 <= 3.0; s2 += 0.25) {
        const double b = phase_crlb(ParamVector(FrontEnd::identity(4), s2, 1.0), known)[0];
        REQUIRE(b > previous);
        previous = b;
    }
}
