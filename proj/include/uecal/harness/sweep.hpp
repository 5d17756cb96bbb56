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
#include "uecal/harness/config.hpp"
#include "uecal/harness/csv.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace uecal::harness {

struct GridPoint
{
    double snr_db = 0.0;
    double gamma = 0.0;
    double phi_deg = 0.0;
};

/// snr_db x gamma x phi_deg, with phi varying fastest.
std::vector<GridPoint> grid_points(const ExperimentConfig &cfg);

/// Scenario of one grid point, with N0 derived from the SNR and the truth amplitudes.
Scenario point_scenario(const ExperimentConfig &cfg, const GridPoint &point);

/// Truth phases of one realization: the configured list, or uniform on
/// (-pi, pi] drawn from the truth stream.
RVector draw_truth_phases(const ExperimentConfig &cfg, const GridPoint &point, std::uint64_t realization,
                          std::uint64_t master_seed);

struct RealizationResult
{
    FrontEnd truth;
    ObservationSet observation;
    RVector alpha_hat_moment;
    RVector alpha_hat_mle;
    RVector d_hat;

    /// From the MLE. NaN when either phase estimator hit a zero snapshot sum.
    double phase_err_var = 0.0;
    double phase_err_mse = 0.0;
    /// NaN when the amplitude estimate is the zero vector.
    double cos_sim = 0.0;

    bool degenerate_phase = false;
    bool degenerate_amplitude = false;
};

/// One Monte-Carlo realization. Estimation failures are flagged in the result
/// rather than thrown; invalid inputs still throw.
RealizationResult run_realization(const ExperimentConfig &cfg, const GridPoint &point, std::uint64_t realization,
                                  std::uint64_t master_seed);
RealizationResult run_realization(const ExperimentConfig &cfg, const GridPoint &point, std::uint64_t realization);

/// Aggregate of all realizations at one point. Means are over realizations.
struct PointSummary
{
    GridPoint point;
    double n0 = 0.0;
    double phase_err_var = 0.0;
    double phase_err_mse = 0.0;
    double crlb_alpha_mean = 0.0;     ///< +inf when gamma = 0
    double cos_sim_mean = 0.0;
    double cos_sim_std = 0.0;         ///< sample standard deviation, 0 for a single realization
    double crlb_alpha_high_snr = 0.0; ///< +inf when gamma = 0
    std::size_t degenerate = 0;       ///< realizations with a flagged estimate
};

/// Bound-only summary (no simulation); the Monte-Carlo fields are NaN.
PointSummary bound_summary(const ExperimentConfig &cfg, const GridPoint &point);

/// Runs every realization of every grid point. Work is spread over `threads`
/// workers (0: hardware concurrency); the result does not depend on it.
std::vector<PointSummary> simulate_points(const ExperimentConfig &cfg, unsigned threads);

/// Long-format rows, in grid order and then in metric-list order, for the
/// metrics the config selects.
std::vector<MetricRow> summary_rows(const ExperimentConfig &cfg, const std::vector<PointSummary> &summaries);

struct SweepResult
{
    std::vector<MetricRow> rows;
    std::size_t degenerate = 0;
};

/// Full sweep. When cfg.output is set the CSV is written there; the file is
/// opened before any computation so an unwritable path fails fast with IoError.
SweepResult run_sweep(const ExperimentConfig &cfg);

/// Rows of the bound metrics only (crlb_alpha_mean, crlb_alpha_high_snr).
std::vector<MetricRow> crlb_rows(const ExperimentConfig &cfg);

/// Wide per-chain dump of one realization at the first grid point:
/// chain, alpha_true, alpha_hat_moment, alpha_hat_mle, d_true, d_hat, then
/// y<t>_re, y<t>_im for t = 1..T.
void write_realization_csv(const std::filesystem::path &path, const RealizationResult &r);

} // namespace uecal::harness
