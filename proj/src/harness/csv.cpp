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

#include "uecal/harness/csv.hpp"

#include "uecal/core/error.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>

namespace uecal::harness {
namespace {

bool same_bits(double a, double b)
{
    return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

template <typename T>
T parse_number(std::string_view field, std::size_t line, const char *column)
{
    T out{};
    const auto res = std::from_chars(field.data(), field.data() + field.size(), out);
    if (res.ec != std::errc() || res.ptr != field.data() + field.size())
        throw InvalidArgument("CSV line " + std::to_string(line) + ": bad " + column + " '" + std::string(field) + "'");
    return out;
}

} // namespace

bool identical(const MetricRow &a, const MetricRow &b)
{
    return a.experiment_id == b.experiment_id && same_bits(a.snr_db, b.snr_db) && same_bits(a.gamma, b.gamma) &&
           same_bits(a.sigma2, b.sigma2) && same_bits(a.n0, b.n0) && same_bits(a.phi_deg, b.phi_deg) &&
           a.antennas == b.antennas && a.snapshots == b.snapshots && a.n_mc == b.n_mc && a.seed == b.seed &&
           a.metric_name == b.metric_name && same_bits(a.value, b.value);
}

const std::string &csv_header()
{
    static const std::string header = "experiment_id,snr_db,gamma,sigma2,n0,phi_deg,M,T,n_mc,seed,metric_name,value";
    return header;
}

std::string format_double(double x)
{
    if (std::isnan(x))
        return "nan";
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

void write_csv(std::ostream &out, const std::vector<MetricRow> &rows)
{
    out << csv_header() << '\n';
    for (const auto &r : rows) {
        out << r.experiment_id << ',' << format_double(r.snr_db) << ',' << format_double(r.gamma) << ','
            << format_double(r.sigma2) << ',' << format_double(r.n0) << ',' << format_double(r.phi_deg) << ','
            << r.antennas << ',' << r.snapshots << ',' << r.n_mc << ',' << r.seed << ',' << r.metric_name << ','
            << format_double(r.value) << '\n';
    }
}

void write_csv(const std::filesystem::path &path, const std::vector<MetricRow> &rows)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open '" + path.string() + "' for writing");
    write_csv(out, rows);
    out.flush();
    if (!out)
        throw IoError("write to '" + path.string() + "' failed");
}

std::vector<MetricRow> read_csv(std::istream &in)
{
    std::string line;
    if (!std::getline(in, line) || line != csv_header())
        throw InvalidArgument("CSV: missing or unexpected header");

    std::vector<MetricRow> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty())
            continue;
        std::vector<std::string_view> f;
        std::string_view rest = line;
        while (true) {
            const auto comma = rest.find(',');
            f.push_back(rest.substr(0, comma));
            if (comma == std::string_view::npos)
                break;
            rest.remove_prefix(comma + 1);
        }
        if (f.size() != 12)
            throw InvalidArgument("CSV line " + std::to_string(line_no) + ": expected 12 fields");

        MetricRow r;
        r.experiment_id = std::string(f[0]);
        r.snr_db = parse_number<double>(f[1], line_no, "snr_db");
        r.gamma = parse_number<double>(f[2], line_no, "gamma");
        r.sigma2 = parse_number<double>(f[3], line_no, "sigma2");
        r.n0 = parse_number<double>(f[4], line_no, "n0");
        r.phi_deg = parse_number<double>(f[5], line_no, "phi_deg");
        r.antennas = parse_number<std::size_t>(f[6], line_no, "M");
        r.snapshots = parse_number<std::size_t>(f[7], line_no, "T");
        r.n_mc = parse_number<std::size_t>(f[8], line_no, "n_mc");
        r.seed = parse_number<std::uint64_t>(f[9], line_no, "seed");
        r.metric_name = std::string(f[10]);
        r.value = parse_number<double>(f[11], line_no, "value");
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<MetricRow> read_csv(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot read '" + path.string() + "'");
    return read_csv(in);
}

} // namespace uecal::harness
