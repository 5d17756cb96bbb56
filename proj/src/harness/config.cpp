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

#include "uecal/harness/config.hpp"

#include "uecal/core/error.hpp"
#include "uecal/core/phase.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace uecal::harness {
namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return out;
}

class LineError
{
public:
    LineError(std::size_t line, std::string_view key) : line_(line), key_(key) {}

    [[noreturn]] void fail(const std::string &why) const
    {
        throw InvalidConfig("config line " + std::to_string(line_) + " (" + key_ + "): " + why);
    }

private:
    std::size_t line_;
    std::string key_;
};

double to_double(std::string_view v, const LineError &err)
{
    double out = 0.0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc() || res.ptr != v.data() + v.size() || !std::isfinite(out))
        err.fail("expected a finite number, got '" + std::string(v) + "'");
    return out;
}

std::uint64_t to_u64(std::string_view v, const LineError &err)
{
    std::uint64_t out = 0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc() || res.ptr != v.data() + v.size())
        err.fail("expected a nonnegative integer, got '" + std::string(v) + "'");
    return out;
}

std::vector<double> to_list(std::string_view v, const LineError &err)
{
    std::vector<double> out;
    for (std::string_view item : split(v, ','))
        out.push_back(to_double(item, err));
    return out;
}

} // namespace

const std::vector<std::string> &all_metric_names()
{
    static const std::vector<std::string> names{
        std::string(kPhaseErrVar), std::string(kPhaseErrMse), std::string(kCrlbAlphaMean),
        std::string(kCosSimMean),  std::string(kCosSimStd),   std::string(kCrlbAlphaHighSnr),
    };
    return names;
}

bool is_metric_name(std::string_view name)
{
    const auto &all = all_metric_names();
    return std::find(all.begin(), all.end(), name) != all.end();
}

void ExperimentConfig::validate() const
{
    const auto fail = [](const std::string &why) { throw InvalidConfig(why); };
    if (experiment_id.empty() ||
        !std::all_of(experiment_id.begin(), experiment_id.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.'; }))
        fail("experiment_id must be nonempty and use only [A-Za-z0-9_.-]");
    if (antennas < 2)
        fail("M must be at least 2 (phase error variance is taken across chains)");
    if (snapshots < 1)
        fail("T must be at least 1");
    if (n_mc < 1)
        fail("n_mc must be at least 1");
    if (snr_db.empty() || gamma.empty() || phi_deg.empty())
        fail("snr_db, gamma and phi_deg lists must be nonempty");
    for (double g : gamma)
        if (g < 0.0)
            fail("gamma values must be nonnegative");
    for (double p : phi_deg)
        if (p < -90.0 || p > 90.0)
            fail("phi_deg values must lie in [-90, 90]");
    if (!(sigma2 >= 0.0))
        fail("sigma2 must be nonnegative");
    if (sigma2 == 0.0)
        for (double g : gamma)
            if (g == 0.0)
                fail("sigma2 = 0 together with gamma = 0 leaves no signal to observe");
    if (!(spacing > 0.0))
        fail("spacing must be positive");
    if (!amplitude_truth.empty()) {
        if (amplitude_truth.size() != antennas)
            fail("amplitude_truth must list exactly M values");
        for (double d : amplitude_truth)
            if (!(d > 0.0))
                fail("amplitude_truth values must be positive");
    }
    if (!phase_truth.empty()) {
        if (phase_truth.size() != antennas)
            fail("phase_truth must list exactly M values");
        for (double a : phase_truth)
            if (a <= -kPi || a > kPi)
                fail("phase_truth values must lie in (-pi, pi]");
    }
    if (metrics.empty())
        fail("at least one metric must be selected");
    for (const auto &m : metrics)
        if (!is_metric_name(m))
            fail("unknown metric '" + m + "'");
}

FrontEnd ExperimentConfig::amplitude_front_end() const
{
    const auto n = static_cast<Eigen::Index>(antennas);
    FrontEnd fe = FrontEnd::identity(antennas);
    if (!amplitude_truth.empty())
        fe.amplitude = Eigen::Map<const RVector>(amplitude_truth.data(), n);
    return fe;
}

Complex ExperimentConfig::pilot() const
{
    return std::polar(1.0, deg_to_rad(pilot_phase_deg));
}

bool ExperimentConfig::wants(std::string_view metric) const
{
    return std::find(metrics.begin(), metrics.end(), metric) != metrics.end();
}

ExperimentConfig parse_config(std::string_view text)
{
    ExperimentConfig cfg;
    using Setter = std::function<void(std::string_view, const LineError &)>;
    const std::map<std::string, Setter, std::less<>> setters{
        {"experiment_id", [&](std::string_view v, const LineError &) { cfg.experiment_id = std::string(v); }},
        {"M", [&](std::string_view v, const LineError &e) { cfg.antennas = to_u64(v, e); }},
        {"T", [&](std::string_view v, const LineError &e) { cfg.snapshots = to_u64(v, e); }},
        {"n_mc", [&](std::string_view v, const LineError &e) { cfg.n_mc = to_u64(v, e); }},
        {"master_seed", [&](std::string_view v, const LineError &e) { cfg.master_seed = to_u64(v, e); }},
        {"snr_db", [&](std::string_view v, const LineError &e) { cfg.snr_db = to_list(v, e); }},
        {"gamma", [&](std::string_view v, const LineError &e) { cfg.gamma = to_list(v, e); }},
        {"phi_deg", [&](std::string_view v, const LineError &e) { cfg.phi_deg = to_list(v, e); }},
        {"sigma2", [&](std::string_view v, const LineError &e) { cfg.sigma2 = to_double(v, e); }},
        {"spacing", [&](std::string_view v, const LineError &e) { cfg.spacing = to_double(v, e); }},
        {"pilot_phase_deg", [&](std::string_view v, const LineError &e) { cfg.pilot_phase_deg = to_double(v, e); }},
        {"amplitude_truth",
         [&](std::string_view v, const LineError &e) {
             cfg.amplitude_truth = v == "ones" ? std::vector<double>{} : to_list(v, e);
         }},
        {"phase_truth",
         [&](std::string_view v, const LineError &e) {
             cfg.phase_truth = v == "uniform" ? std::vector<double>{} : to_list(v, e);
         }},
        {"metrics",
         [&](std::string_view v, const LineError &e) {
             if (v == "all") {
                 cfg.metrics = all_metric_names();
                 return;
             }
             cfg.metrics.clear();
             for (std::string_view name : split(v, ',')) {
                 if (!is_metric_name(name))
                     e.fail("unknown metric '" + std::string(name) + "'");
                 cfg.metrics.emplace_back(name);
             }
         }},
        {"output", [&](std::string_view v, const LineError &) { cfg.output = std::string(v); }},
        {"threads",
         [&](std::string_view v, const LineError &e) { cfg.threads = static_cast<unsigned>(to_u64(v, e)); }},
    };

    std::size_t line_no = 0;
    for (std::string_view raw : split(text, '\n')) {
        ++line_no;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw InvalidConfig("config line " + std::to_string(line_no) + ": expected 'key = value'");
        const std::string_view key = trim(line.substr(0, eq));
        const std::string_view value = trim(line.substr(eq + 1));
        const LineError err(line_no, key);
        const auto it = setters.find(key);
        if (it == setters.end())
            err.fail("unknown key");
        if (value.empty())
            err.fail("missing value");
        it->second(value, err);
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot read config file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

} // namespace uecal::harness
