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

#include "uecal/harness/sweep.hpp"

#include "uecal/core/error.hpp"
#include "uecal/core/phase.hpp"
#include "uecal/crlb.hpp"
#include "uecal/estimators.hpp"
#include "uecal/harness/metrics.hpp"
#include "uecal/harness/seed.hpp"
#include "uecal/model.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <random>
#include <thread>

namespace uecal::harness {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// What aggregation needs from one realization.
struct Sample
{
    double phase_err_var = 0.0;
    double phase_err_mse = 0.0;
    double cos_sim = 0.0;
    bool degenerate_phase = false;
    bool degenerate_amplitude = false;
};

FrontEnd truth_amplitudes(const ExperimentConfig &cfg)
{
    return cfg.amplitude_front_end();
}

void fill_bounds(const ExperimentConfig &cfg, PointSummary &s)
{
    const Scenario sc = point_scenario(cfg, s.point);
    const ParamVector xi(truth_amplitudes(cfg), sc.diffuse_power, sc.los_amplitude);
    s.n0 = sc.noise_power;
    s.crlb_alpha_mean = phase_crlb(xi, KnownQuantities::from(sc)).mean();
    s.crlb_alpha_high_snr = crlb_high_snr(xi, sc.snapshots).high_snr_alpha.mean();
}

unsigned resolve_threads(unsigned requested, std::size_t tasks)
{
    unsigned n = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
    return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(tasks, 1)));
}

void push_row(std::vector<MetricRow> &rows, const ExperimentConfig &cfg, const PointSummary &s,
              std::string_view name, double value)
{
    if (!cfg.wants(name))
        return;
    MetricRow r;
    r.experiment_id = cfg.experiment_id;
    r.snr_db = s.point.snr_db;
    r.gamma = s.point.gamma;
    r.sigma2 = cfg.sigma2;
    r.n0 = s.n0;
    r.phi_deg = s.point.phi_deg;
    r.antennas = cfg.antennas;
    r.snapshots = cfg.snapshots;
    r.n_mc = cfg.n_mc;
    r.seed = cfg.master_seed;
    r.metric_name = std::string(name);
    r.value = value;
    rows.push_back(std::move(r));
}

} // namespace

std::vector<GridPoint> grid_points(const ExperimentConfig &cfg)
{
    std::vector<GridPoint> out;
    out.reserve(cfg.snr_db.size() * cfg.gamma.size() * cfg.phi_deg.size());
    for (double snr : cfg.snr_db)
        for (double g : cfg.gamma)
            for (double phi : cfg.phi_deg)
                out.push_back({snr, g, phi});
    return out;
}

Scenario point_scenario(const ExperimentConfig &cfg, const GridPoint &point)
{
    Scenario sc;
    sc.antennas = cfg.antennas;
    sc.snapshots = cfg.snapshots;
    sc.los_amplitude = point.gamma;
    sc.diffuse_power = cfg.sigma2;
    sc.noise_power = noise_power_for_snr(db_to_linear(point.snr_db), truth_amplitudes(cfg), cfg.sigma2, point.gamma);
    sc.aoa = deg_to_rad(point.phi_deg);
    sc.pilot = cfg.pilot();
    sc.spacing = cfg.spacing;
    return sc;
}

RVector draw_truth_phases(const ExperimentConfig &cfg, const GridPoint &point, std::uint64_t realization,
                          std::uint64_t master_seed)
{
    const auto M = static_cast<Eigen::Index>(cfg.antennas);
    if (!cfg.phase_truth.empty())
        return Eigen::Map<const RVector>(cfg.phase_truth.data(), M);

    std::mt19937_64 rng(derive_seed(master_seed, point.snr_db, point.gamma, point.phi_deg, realization,
                                    SeedStream::Truth));
    RVector alpha(M);
    for (Eigen::Index m = 0; m < M; ++m) {
        // u in [0, 1) maps onto (-pi, pi].
        const double u = std::generate_canonical<double, std::numeric_limits<double>::digits>(rng);
        alpha[m] = kPi - kTwoPi * u;
    }
    return alpha;
}

RealizationResult run_realization(const ExperimentConfig &cfg, const GridPoint &point, std::uint64_t realization,
                                  std::uint64_t master_seed)
{
    const Scenario sc = point_scenario(cfg, point);
    RealizationResult r;
    r.truth = truth_amplitudes(cfg);
    r.truth.phase = draw_truth_phases(cfg, point, realization, master_seed);

    r.observation = synthesize(
        sc, r.truth,
        derive_seed(master_seed, point.snr_db, point.gamma, point.phi_deg, realization, SeedStream::Observation));

    const CVector a = steering_vector(sc.aoa, sc.antennas, sc.spacing);
    const auto M = static_cast<Eigen::Index>(sc.antennas);
    try {
        r.alpha_hat_moment = estimate_phase_moment(r.observation, a, sc.pilot).alpha_hat;
        const ParamVector xi(r.truth, sc.diffuse_power, sc.los_amplitude);
        const RVector w = likelihood_phase_weights(xi, KnownQuantities::from(sc));
        r.alpha_hat_mle = estimate_phase_mle_numeric(r.observation, a, sc.pilot, w).alpha_hat;
        r.phase_err_var = phase_error_variance(r.alpha_hat_mle, r.truth.phase);
        r.phase_err_mse = phase_error_mse(r.alpha_hat_mle, r.truth.phase);
    } catch (const DegenerateEstimate &) {
        r.degenerate_phase = true;
        r.alpha_hat_moment = RVector::Constant(M, kNaN);
        r.alpha_hat_mle = RVector::Constant(M, kNaN);
        r.phase_err_var = kNaN;
        r.phase_err_mse = kNaN;
    }

    r.d_hat = estimate_amplitude_moment(sample_moments(r.observation)).d_hat;
    if (r.d_hat.squaredNorm() > 0.0) {
        r.cos_sim = cosine_similarity(r.d_hat, r.truth.amplitude);
    } else {
        r.degenerate_amplitude = true;
        r.cos_sim = kNaN;
    }
    return r;
}

RealizationResult run_realization(const ExperimentConfig &cfg, const GridPoint &point, std::uint64_t realization)
{
    return run_realization(cfg, point, realization, cfg.master_seed);
}

PointSummary bound_summary(const ExperimentConfig &cfg, const GridPoint &point)
{
    PointSummary s;
    s.point = point;
    s.phase_err_var = s.phase_err_mse = s.cos_sim_mean = s.cos_sim_std = kNaN;
    fill_bounds(cfg, s);
    return s;
}

std::vector<PointSummary> simulate_points(const ExperimentConfig &cfg, unsigned threads)
{
    cfg.validate();
    const std::vector<GridPoint> points = grid_points(cfg);
    const std::size_t n_mc = cfg.n_mc;
    const std::size_t tasks = points.size() * n_mc;
    std::vector<Sample> samples(tasks);

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= tasks)
                return;
            try {
                const RealizationResult r = run_realization(cfg, points[i / n_mc], i % n_mc);
                samples[i] = {r.phase_err_var, r.phase_err_mse, r.cos_sim, r.degenerate_phase,
                              r.degenerate_amplitude};
            } catch (...) {
                const std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
                next.store(tasks);
                return;
            }
        }
    };

    const unsigned n_threads = resolve_threads(threads, tasks);
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(n_threads);
        for (unsigned t = 0; t < n_threads; ++t)
            pool.emplace_back(worker);
    }
    if (failure)
        std::rethrow_exception(failure);

    std::vector<PointSummary> out;
    out.reserve(points.size());
    for (std::size_t p = 0; p < points.size(); ++p) {
        PointSummary s;
        s.point = points[p];
        fill_bounds(cfg, s);

        bool phase_bad = false;
        bool amplitude_bad = false;
        double var_sum = 0.0, mse_sum = 0.0, cos_sum = 0.0;
        for (std::size_t r = 0; r < n_mc; ++r) {
            const Sample &x = samples[p * n_mc + r];
            phase_bad = phase_bad || x.degenerate_phase;
            amplitude_bad = amplitude_bad || x.degenerate_amplitude;
            if (x.degenerate_phase || x.degenerate_amplitude)
                ++s.degenerate;
            var_sum += x.phase_err_var;
            mse_sum += x.phase_err_mse;
            cos_sum += x.cos_sim;
        }
        const double n = static_cast<double>(n_mc);
        s.phase_err_var = phase_bad ? kNaN : var_sum / n;
        s.phase_err_mse = phase_bad ? kNaN : mse_sum / n;
        if (amplitude_bad) {
            s.cos_sim_mean = s.cos_sim_std = kNaN;
        } else {
            s.cos_sim_mean = cos_sum / n;
            double sq = 0.0;
            for (std::size_t r = 0; r < n_mc; ++r) {
                const double dev = samples[p * n_mc + r].cos_sim - s.cos_sim_mean;
                sq += dev * dev;
            }
            s.cos_sim_std = n_mc > 1 ? std::sqrt(sq / (n - 1.0)) : 0.0;
        }
        out.push_back(s);
    }
    return out;
}

std::vector<MetricRow> summary_rows(const ExperimentConfig &cfg, const std::vector<PointSummary> &summaries)
{
    std::vector<MetricRow> rows;
    for (const auto &s : summaries) {
        push_row(rows, cfg, s, kPhaseErrVar, s.phase_err_var);
        push_row(rows, cfg, s, kPhaseErrMse, s.phase_err_mse);
        push_row(rows, cfg, s, kCrlbAlphaMean, s.crlb_alpha_mean);
        push_row(rows, cfg, s, kCosSimMean, s.cos_sim_mean);
        push_row(rows, cfg, s, kCosSimStd, s.cos_sim_std);
        push_row(rows, cfg, s, kCrlbAlphaHighSnr, s.crlb_alpha_high_snr);
    }
    return rows;
}

SweepResult run_sweep(const ExperimentConfig &cfg)
{
    cfg.validate();
    std::ofstream out;
    if (!cfg.output.empty()) {
        out.open(cfg.output, std::ios::binary | std::ios::trunc);
        if (!out)
            throw IoError("cannot open '" + cfg.output + "' for writing");
    }

    const std::vector<PointSummary> summaries = simulate_points(cfg, cfg.threads);
    SweepResult result;
    result.rows = summary_rows(cfg, summaries);
    for (const auto &s : summaries)
        result.degenerate += s.degenerate;

    if (out.is_open()) {
        write_csv(out, result.rows);
        out.flush();
        if (!out)
            throw IoError("write to '" + cfg.output + "' failed");
    }
    return result;
}

std::vector<MetricRow> crlb_rows(const ExperimentConfig &cfg)
{
    cfg.validate();
    std::vector<PointSummary> summaries;
    for (const GridPoint &p : grid_points(cfg))
        summaries.push_back(bound_summary(cfg, p));

    ExperimentConfig bounds_only = cfg;
    bounds_only.metrics.clear();
    for (std::string_view m : {kCrlbAlphaMean, kCrlbAlphaHighSnr})
        if (cfg.wants(m))
            bounds_only.metrics.emplace_back(m);
    return summary_rows(bounds_only, summaries);
}

void write_realization_csv(const std::filesystem::path &path, const RealizationResult &r)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open '" + path.string() + "' for writing");

    const CMatrix &y = r.observation.y;
    out << "chain,alpha_true,alpha_hat_moment,alpha_hat_mle,d_true,d_hat";
    for (Eigen::Index t = 0; t < y.cols(); ++t)
        out << ",y" << t + 1 << "_re,y" << t + 1 << "_im";
    out << '\n';
    for (Eigen::Index m = 0; m < y.rows(); ++m) {
        out << m + 1 << ',' << format_double(r.truth.phase[m]) << ',' << format_double(r.alpha_hat_moment[m]) << ','
            << format_double(r.alpha_hat_mle[m]) << ',' << format_double(r.truth.amplitude[m]) << ','
            << format_double(r.d_hat[m]);
        for (Eigen::Index t = 0; t < y.cols(); ++t)
            out << ',' << format_double(y(m, t).real()) << ',' << format_double(y(m, t).imag());
        out << '\n';
    }
    out.flush();
    if (!out)
        throw IoError("write to '" + path.string() + "' failed");
}

} // namespace uecal::harness
