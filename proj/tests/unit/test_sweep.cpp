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
#include "uecal/harness/sweep.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

using namespace uecal;
using namespace uecal::harness;
using namespace uecal::test;

namespace {

ExperimentConfig small_config()
{
    ExperimentConfig cfg;
    cfg.experiment_id = "unit";
    cfg.antennas = 16;
    cfg.snapshots = 3;
    cfg.n_mc = 6;
    cfg.master_seed = 99;
    cfg.snr_db = {0.0, 10.0};
    cfg.gamma = {0.0, 1.0};
    cfg.phi_deg = {0.0, 45.0};
    return cfg;
}

std::string slurp(const std::filesystem::path &p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

} // namespace

TEST_CASE("grid points vary phi fastest, then gamma, then SNR", "[sweep]")
{
    const auto pts = grid_points(small_config());
    REQUIRE(pts.size() == 8);
    CHECK(pts[0].snr_db == 0.0);
    CHECK(pts[0].gamma == 0.0);
    CHECK(pts[0].phi_deg == 0.0);
    CHECK(pts[1].phi_deg == 45.0);
    CHECK(pts[2].gamma == 1.0);
    CHECK(pts[4].snr_db == 10.0);
}

TEST_CASE("point scenario derives N0 from the SNR", "[sweep]")
{
    ExperimentConfig cfg = small_config();
    cfg.sigma2 = 1.0;
    const Scenario sc = point_scenario(cfg, {10.0, 1.0, 60.0});
    CHECK_THAT(sc.noise_power, WithinRel(0.2, 1e-14));
    CHECK_THAT(sc.aoa, WithinRel(kPi / 3, 1e-15));
    CHECK(sc.antennas == 16);
}

TEST_CASE("truth phases are uniform on the half-open interval, or as configured", "[sweep]")
{
    ExperimentConfig cfg = small_config();
    cfg.antennas = 2000;
    const RVector alpha = draw_truth_phases(cfg, {0.0, 1.0, 0.0}, 3, cfg.master_seed);
    CHECK(alpha.minCoeff() > -kPi);
    CHECK(alpha.maxCoeff() <= kPi);
    CHECK(std::abs(alpha.mean()) < 0.2);
    CHECK(alpha == draw_truth_phases(cfg, {0.0, 1.0, 0.0}, 3, cfg.master_seed));
    CHECK(alpha != draw_truth_phases(cfg, {0.0, 1.0, 0.0}, 4, cfg.master_seed));

    cfg.antennas = 2;
    cfg.phase_truth = {0.5, -0.5};
    const RVector fixed = draw_truth_phases(cfg, {0.0, 1.0, 0.0}, 3, cfg.master_seed);
    CHECK(fixed[0] == 0.5);
    CHECK(fixed[1] == -0.5);
}

TEST_CASE("realizations are deterministic", "[sweep]")
{
    const ExperimentConfig cfg = small_config();
    const RealizationResult a = run_realization(cfg, {10.0, 1.0, 45.0}, 2);
    const RealizationResult b = run_realization(cfg, {10.0, 1.0, 45.0}, 2);
    CHECK(a.observation.y == b.observation.y);
    CHECK(a.alpha_hat_mle == b.alpha_hat_mle);
    CHECK(a.phase_err_var == b.phase_err_var);
    CHECK(a.cos_sim == b.cos_sim);
    CHECK_FALSE(a.degenerate_phase);
    CHECK_FALSE(a.degenerate_amplitude);
    for (Eigen::Index m = 0; m < a.alpha_hat_mle.size(); ++m)
        CHECK(std::abs(wrap_phase(a.alpha_hat_mle[m] - a.alpha_hat_moment[m])) < 1e-6);
}

TEST_CASE("strong LOS drives the phase error variance to zero", "[sweep]")
{
    ExperimentConfig cfg = small_config();
    cfg.antennas = 100;
    // SNR counts the LOS power, so a large gamma needs a large SNR for small n0
    const RealizationResult r = run_realization(cfg, {60.0, 1000.0, 0.0}, 0);
    CHECK(r.phase_err_var < 1e-4);
}

TEST_CASE("no LOS: infinite phase bound, finite estimator variance", "[sweep]")
{
    ExperimentConfig cfg = small_config();
    cfg.snr_db = {10.0};
    cfg.gamma = {0.0};
    cfg.phi_deg = {0.0};
    const auto summaries = simulate_points(cfg, 1);
    REQUIRE(summaries.size() == 1);
    CHECK(std::isinf(summaries[0].crlb_alpha_mean));
    CHECK(std::isinf(summaries[0].crlb_alpha_high_snr));
    CHECK(std::isfinite(summaries[0].phase_err_var));
    CHECK(summaries[0].phase_err_var > 1.0);
}

TEST_CASE("one point and one realization gives the realization metrics plus bounds", "[sweep]")
{
    ExperimentConfig cfg = small_config();
    cfg.n_mc = 1;
    cfg.snr_db = {0.0};
    cfg.gamma = {1.0};
    cfg.phi_deg = {0.0};
    const SweepResult res = run_sweep(cfg);
    REQUIRE(res.rows.size() == all_metric_names().size());
    const RealizationResult r = run_realization(cfg, {0.0, 1.0, 0.0}, 0);
    for (std::size_t i = 0; i < res.rows.size(); ++i)
        CHECK(res.rows[i].metric_name == all_metric_names()[i]);
    CHECK(res.rows[0].value == r.phase_err_var);
    CHECK(res.rows[1].value == r.phase_err_mse);
    CHECK_THAT(res.rows[2].value, WithinRel(0.8333333333333333, 1e-12)); // (2 + 3) / 6
    CHECK(res.rows[3].value == r.cos_sim);
    CHECK(res.rows[4].value == 0.0);
    CHECK(res.rows[5].value == 0.5);
    CHECK(res.rows[0].n0 == 2.0);
    CHECK(res.rows[0].seed == cfg.master_seed);
}

TEST_CASE("metric selection filters rows", "[sweep]")
{
    ExperimentConfig cfg = small_config();
    cfg.metrics = {"cos_sim_mean", "crlb_alpha_mean"};
    const SweepResult res = run_sweep(cfg);
    REQUIRE(res.rows.size() == 2 * grid_points(cfg).size());
    // Order follows the canonical metric list, not the config order.
    CHECK(res.rows[0].metric_name == "crlb_alpha_mean");
    CHECK(res.rows[1].metric_name == "cos_sim_mean");

    const auto bounds = crlb_rows(cfg);
    REQUIRE(bounds.size() == grid_points(cfg).size());
    CHECK(bounds[0].metric_name == "crlb_alpha_mean");
}

TEST_CASE("sweep output is identical across thread counts and runs", "[sweep][property]")
{
    const auto dir = std::filesystem::temp_directory_path();
    ExperimentConfig cfg = small_config();
    std::vector<std::string> outputs;
    for (unsigned threads : {1u, 2u, 5u, 1u}) {
        cfg.threads = threads;
        cfg.output = (dir / ("uecal_sweep_" + std::to_string(getpid()) + "_t" + std::to_string(threads) + ".csv")).string();
        run_sweep(cfg);
        outputs.push_back(slurp(cfg.output));
        std::filesystem::remove(cfg.output);
    }
    for (const auto &o : outputs)
        CHECK(o == outputs.front());
    CHECK(outputs.front().rfind(csv_header(), 0) == 0);
}

TEST_CASE("unwritable output fails before any computation", "[sweep]")
{
    ExperimentConfig cfg = small_config();
    cfg.n_mc = 1000000; // would take minutes if it ran
    cfg.output = "/nonexistent/dir/out.csv";
    CHECK_THROWS_AS(run_sweep(cfg), IoError);
}

TEST_CASE("phase error variance does not grow with gamma", "[sweep][property]")
{
    ExperimentConfig cfg;
    cfg.antennas = 100;
    cfg.n_mc = 100;
    cfg.master_seed = 5;
    cfg.phi_deg = {0.0};
    const auto summaries = simulate_points(cfg, 0);
    const std::size_t G = cfg.gamma.size();
    for (std::size_t s = 0; s < cfg.snr_db.size(); ++s)
        for (std::size_t g = 1; g < G; ++g) {
            const double prev = summaries[s * G + g - 1].phase_err_var;
            const double cur = summaries[s * G + g].phase_err_var;
            CAPTURE(cfg.snr_db[s], cfg.gamma[g], prev, cur);
            CHECK(cur <= prev * 1.03);
        }
}

TEST_CASE("single-realization dump", "[sweep]")
{
    ExperimentConfig cfg = small_config();
    cfg.antennas = 4;
    const RealizationResult r = run_realization(cfg, grid_points(cfg).front(), 0);
    const auto path = std::filesystem::temp_directory_path() / ("uecal_dump_" + std::to_string(getpid()) + ".csv");
    write_realization_csv(path, r);
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "chain,alpha_true,alpha_hat_moment,alpha_hat_mle,d_true,d_hat,y1_re,y1_im,y2_re,y2_im,y3_re,y3_im");
    int lines = 0;
    for (std::string line; std::getline(in, line);)
        ++lines;
    CHECK(lines == 4);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(write_realization_csv("/nonexistent/dir/x.csv", r), IoError);
}
