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

#include "tables.hpp"

#include <arm_neon.h>

namespace uecal::kernels::detail {
namespace {

// One complex value per float64x2_t: [re, im].

inline float64x2_t cmul(float64x2_t a, float64x2_t b)
{
    const float64x2_t b_re = vdupq_laneq_f64(b, 0);
    const float64x2_t b_im = vdupq_laneq_f64(b, 1);
    const float64x2_t a_sw = vextq_f64(a, a, 1);
    const float64x2_t t1 = vmulq_f64(a, b_re);
    const float64x2_t t2 = vmulq_f64(a_sw, b_im);
    // lane 0 subtracts, lane 1 adds; negation is exact
    const float64x2_t sign = {-1.0, 1.0};
    return vaddq_f64(t1, vmulq_f64(t2, sign));
}

inline const double *dp(const Complex *p) { return reinterpret_cast<const double *>(p); }
inline double *dp(Complex *p) { return reinterpret_cast<double *>(p); }

void add_neon(const Complex *a, const Complex *b, Complex *out, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i)
        vst1q_f64(dp(out + i), vaddq_f64(vld1q_f64(dp(a + i)), vld1q_f64(dp(b + i))));
}

void axpy_neon(double s, const Complex *x, const Complex *y, Complex *out, std::size_t n)
{
    const float64x2_t vs = vdupq_n_f64(s);
    for (std::size_t i = 0; i < n; ++i)
        vst1q_f64(dp(out + i), vaddq_f64(vmulq_f64(vs, vld1q_f64(dp(x + i))), vld1q_f64(dp(y + i))));
}

void multiply_neon(const Complex *a, const Complex *b, Complex *out, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i)
        vst1q_f64(dp(out + i), cmul(vld1q_f64(dp(a + i)), vld1q_f64(dp(b + i))));
}

void scale_neon(Complex s, const Complex *x, Complex *out, std::size_t n)
{
    const float64x2_t vs = {s.real(), s.imag()};
    for (std::size_t i = 0; i < n; ++i)
        vst1q_f64(dp(out + i), cmul(vld1q_f64(dp(x + i)), vs));
}

double dot_neon(const double *x, const double *y, std::size_t n)
{
    // Two registers emulate the 4-lane reduction order of the reference.
    float64x2_t lo = vdupq_n_f64(0.0);
    float64x2_t hi = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        lo = vaddq_f64(lo, vmulq_f64(vld1q_f64(x + i), vld1q_f64(y + i)));
        hi = vaddq_f64(hi, vmulq_f64(vld1q_f64(x + i + 2), vld1q_f64(y + i + 2)));
    }
    double tail = 0.0;
    for (; i < n; ++i) {
        const double p = x[i] * y[i];
        tail = tail + p;
    }
    return ((vgetq_lane_f64(lo, 0) + vgetq_lane_f64(lo, 1)) + (vgetq_lane_f64(hi, 0) + vgetq_lane_f64(hi, 1))) + tail;
}

} // namespace

const KernelTable &neon_table()
{
    static const KernelTable table{
        Isa::Neon,
        add_neon,
        axpy_neon,
        multiply_neon,
        scale_neon,
        dot_neon,
    };
    return table;
}

} // namespace uecal::kernels::detail
