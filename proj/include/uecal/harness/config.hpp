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
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace uecal::harness {

/// Metric names, in the order rows are emitted for each grid point.
inline constexpr std::string_view kPhaseErrVar = "phase_err_var";
inline constexpr std::string_view kPhaseErrMse = "phase_err_mse";
inline constexpr std::string_view kCrlbAlphaMean = "crlb_alpha_mean";
inline constexpr std::string_view kCosSimMean = "cos_sim_mean";
inline constexpr std::string_view kCosSimStd = "cos_sim_std";
inline constexpr std::string_view kCrlbAlphaHighSnr = "crlb_alpha_high_snr";

const std::vector<std::string> &all_metric_names();
bool is_metric_name(std::string_view name);

/// Sweep settings. See README.md for the file format.
struct ExperimentConfig
{
    std::string experiment_id = "sweep";
    std::size_t antennas = 100;
    std::size_t snapshots = 3;
    std::size_t n_mc = 10;
    std::uint64_t master_seed = 1;
    std::vector<double> snr_db = {-10.0, 0.0, 10.0};
    std::vector<double> gamma = {0.0, 0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0};
    std::vector<double> phi_deg = {0.0};
    double sigma2 = 1.0;
    double spacing = 0.5;
    double pilot_phase_deg = 0.0;
    std::vector<double> amplitude_truth; ///< empty: all ones
    std::vector<double> phase_truth;     ///< empty: uniform on (-pi, pi] per realization
    std::vector<std::string> metrics = all_metric_names();
    std::string output;
    unsigned threads = 0; ///< 0: hardware concurrency

    /// Throws InvalidConfig.
    void validate() const;

    FrontEnd amplitude_front_end() const; ///< truth amplitudes with zero phases
    Complex pilot() const;
    bool wants(std::string_view metric) const;
};

/// Parses `key = value` lines. Blank lines and `#` comments are ignored, list
/// values are comma-separated. Throws InvalidConfig naming the offending line.
ExperimentConfig parse_config(std::string_view text);

/// Throws IoError if the file cannot be read, InvalidConfig if it does not parse.
ExperimentConfig load_config(const std::filesystem::path &path);

} // namespace uecal::harness
