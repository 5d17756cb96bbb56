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

#include "uecal/harness/metrics.hpp"

#include "uecal/core/error.hpp"
#include "uecal/core/phase.hpp"
#include "uecal/kernels/kernels.hpp"

#include <cmath>
#include <span>

namespace uecal::harness {
namespace {

std::span<const double> view(const RVector &v)
{
    return {v.data(), static_cast<std::size_t>(v.size())};
}

void require_same_length(const RVector &a, const RVector &b, const char *who)
{
    if (a.size() != b.size())
        throw InvalidArgument(std::string(who) + ": length mismatch");
}

} // namespace

double cosine_similarity(const RVector &d_hat, const RVector &d_truth)
{
    require_same_length(d_hat, d_truth, "cosine_similarity");
    const double nh = std::sqrt(kernels::dot(view(d_hat), view(d_hat)));
    const double nt = std::sqrt(kernels::dot(view(d_truth), view(d_truth)));
    if (!(nh > 0.0) || !(nt > 0.0))
        throw InvalidArgument("cosine_similarity: zero-norm input");

    // arccos(|<u, v>|) through 2 atan2(|u - v|, |u + v|) on unit vectors, with v
    // flipped onto u's side. Same angle, but accurate near 0 where acos is not.
    const double sign = kernels::dot(view(d_hat), view(d_truth)) < 0.0 ? -1.0 : 1.0;
    const RVector u = d_hat / nh;
    const RVector v = (sign / nt) * d_truth;
    const RVector diff = u - v;
    const RVector sum = u + v;
    return 2.0 * std::atan2(std::sqrt(kernels::dot(view(diff), view(diff))),
                            std::sqrt(kernels::dot(view(sum), view(sum))));
}

RVector wrapped_errors(const RVector &alpha_hat, const RVector &alpha_truth)
{
    require_same_length(alpha_hat, alpha_truth, "wrapped_errors");
    RVector e(alpha_hat.size());
    for (Eigen::Index m = 0; m < e.size(); ++m)
        e[m] = wrap_phase(alpha_hat[m] - alpha_truth[m]);
    return e;
}

double phase_error_variance(const RVector &alpha_hat, const RVector &alpha_truth)
{
    if (alpha_hat.size() < 2)
        throw InvalidArgument("phase_error_variance: at least two chains are required");
    const RVector e = wrapped_errors(alpha_hat, alpha_truth);
    const double mean = e.mean();
    return (e.array() - mean).square().sum() / static_cast<double>(e.size() - 1);
}

double phase_error_mse(const RVector &alpha_hat, const RVector &alpha_truth)
{
    if (alpha_hat.size() < 1)
        throw InvalidArgument("phase_error_mse: empty input");
    return wrapped_errors(alpha_hat, alpha_truth).squaredNorm() / static_cast<double>(alpha_hat.size());
}

} // namespace uecal::harness
