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

#include "uecal/core/error.hpp"
#include "uecal/harness/config.hpp"
#include "uecal/harness/csv.hpp"
#include "uecal/harness/selfcheck.hpp"
#include "uecal/harness/sweep.hpp"
#include "uecal/kernels/kernels.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

namespace {

enum ExitCode : int { kOk = 0, kInvalidConfig = 1, kNumerical = 2, kIo = 3 };

int exit_code_for(uecal::ErrorKind kind)
{
    using uecal::ErrorKind;
    switch (kind) {
    case ErrorKind::InvalidArgument:
    case ErrorKind::InvalidConfig:
        return kInvalidConfig;
    case ErrorKind::Io:
        return kIo;
    case ErrorKind::DegenerateEstimate:
    case ErrorKind::NumericalDomain:
    case ErrorKind::SingularFim:
    case ErrorKind::DegenerateSchur:
        break;
    }
    return kNumerical;
}

struct SweepArgs
{
    std::string config;
    std::string out;
    std::optional<std::size_t> mc;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> threads;
};

int run_sweep_command(const SweepArgs &args)
{
    auto cfg = uecal::harness::load_config(args.config);
    cfg.output = args.out;
    if (args.mc)
        cfg.n_mc = *args.mc;
    if (args.seed)
        cfg.master_seed = *args.seed;
    if (args.threads)
        cfg.threads = *args.threads;
    cfg.validate();

    const auto result = uecal::harness::run_sweep(cfg);
    if (result.degenerate > 0)
        std::cerr << "uecal: " << result.degenerate
                  << " realization(s) had a degenerate estimate; affected metrics are nan\n";
    std::cerr << "uecal: wrote " << result.rows.size() << " rows to " << cfg.output << '\n';
    return kOk;
}

int run_crlb_command(const std::string &config, const std::string &out)
{
    const auto cfg = uecal::harness::load_config(config);
    const auto rows = uecal::harness::crlb_rows(cfg);
    uecal::harness::write_csv(out, rows);
    std::cerr << "uecal: wrote " << rows.size() << " rows to " << out << '\n';
    return kOk;
}

int run_simulate_command(const std::string &config, std::uint64_t seed, const std::string &out)
{
    const auto cfg = uecal::harness::load_config(config);
    const auto point = uecal::harness::grid_points(cfg).front();
    const auto r = uecal::harness::run_realization(cfg, point, 0, seed);
    uecal::harness::write_realization_csv(out, r);
    return kOk;
}

int run_selfcheck_command(std::uint64_t seed)
{
    bool all = true;
    std::cout << "kernels: " << uecal::kernels::to_string(uecal::kernels::active().isa) << '\n';
    for (const auto &c : uecal::harness::run_selfcheck(seed)) {
        std::printf("%-4s %-40s worst %.3e (tol %.0e)\n", c.passed ? "ok" : "FAIL", c.name.c_str(), c.worst,
                    c.tolerance);
        all = all && c.passed;
    }
    return all ? kOk : kNumerical;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"uecal: calibration estimators, Cramer-Rao bounds and Monte-Carlo sweeps"};
    app.require_subcommand(1);

    SweepArgs sweep;
    auto *sweep_cmd = app.add_subcommand("sweep", "Monte-Carlo sweep over the configured grid, long-format CSV");
    sweep_cmd->add_option("--config", sweep.config, "config file")->required();
    sweep_cmd->add_option("--out", sweep.out, "output CSV")->required();
    sweep_cmd->add_option("--mc", sweep.mc, "realizations per point (overrides n_mc)")->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--seed", sweep.seed, "master seed (overrides master_seed)");
    sweep_cmd->add_option("--threads", sweep.threads, "worker threads, 0 for all cores");

    std::string crlb_config, crlb_out;
    auto *crlb_cmd = app.add_subcommand("crlb", "Bounds only, no simulation");
    crlb_cmd->add_option("--config", crlb_config, "config file")->required();
    crlb_cmd->add_option("--out", crlb_out, "output CSV")->required();

    std::string sim_config, sim_out;
    std::uint64_t sim_seed = 0;
    auto *sim_cmd = app.add_subcommand("simulate", "Dump one realization at the first grid point");
    sim_cmd->add_option("--config", sim_config, "config file")->required();
    sim_cmd->add_option("--seed", sim_seed, "master seed")->required();
    sim_cmd->add_option("--out", sim_out, "output CSV")->required();

    std::uint64_t check_seed = 1;
    auto *check_cmd = app.add_subcommand("selfcheck", "Run the built-in oracle checks");
    check_cmd->add_option("--seed", check_seed, "seed of the random instances");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kInvalidConfig;
    }

    try {
        if (*sweep_cmd)
            return run_sweep_command(sweep);
        if (*crlb_cmd)
            return run_crlb_command(crlb_config, crlb_out);
        if (*sim_cmd)
            return run_simulate_command(sim_config, sim_seed, sim_out);
        return run_selfcheck_command(check_seed);
    } catch (const uecal::Error &e) {
        std::cerr << "uecal: " << uecal::to_string(e.kind()) << ": " << e.what() << '\n';
        return exit_code_for(e.kind());
    } catch (const std::exception &e) {
        std::cerr << "uecal: " << e.what() << '\n';
        return kNumerical;
    }
}
