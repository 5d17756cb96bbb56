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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace uecal::harness {

/// One long-format result row: the settings of a grid point, a metric name and its value.
struct MetricRow
{
    std::string experiment_id;
    double snr_db = 0.0;
    double gamma = 0.0;
    double sigma2 = 0.0;
    double n0 = 0.0;
    double phi_deg = 0.0;
    std::size_t antennas = 0;
    std::size_t snapshots = 0;
    std::size_t n_mc = 0;
    std::uint64_t seed = 0;
    std::string metric_name;
    double value = 0.0;
};

/// Field-by-field equality with doubles compared by bit pattern, so NaN == NaN.
bool identical(const MetricRow &a, const MetricRow &b);

/// experiment_id,snr_db,gamma,sigma2,n0,phi_deg,M,T,n_mc,seed,metric_name,value
const std::string &csv_header();

/// Shortest round-trip decimal form; "inf", "-inf" and "nan" for non-finite values.
std::string format_double(double x);

void write_csv(std::ostream &out, const std::vector<MetricRow> &rows);
void write_csv(const std::filesystem::path &path, const std::vector<MetricRow> &rows);

/// Throws InvalidArgument on a wrong header or a malformed line.
std::vector<MetricRow> read_csv(std::istream &in);
std::vector<MetricRow> read_csv(const std::filesystem::path &path);

} // namespace uecal::harness
