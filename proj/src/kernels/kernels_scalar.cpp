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

// Reference kernels. These define the rounding behavior every SIMD table has
// to reproduce, so the arithmetic is spelled out on real and imaginary parts
// instead of going through std::complex operators.

#include "tables.hpp"

namespace uecal::kernels::detail {
namespace {

void add_scalar(const Complex *a, const Complex *b, Complex *out, std::size_t n)
{
    const auto *pa = reinterpret_cast<const double *>(a);
    const auto *pb = reinterpret_cast<const double *>(b);
    auto *po = reinterpret_cast<double *>(out);
    for (std::size_t i = 0; i < 2 * n; ++i)
        po[i] = pa[i] + pb[i];
}

void axpy_scalar(double s, const Complex *x, const Complex *y, Complex *out, std::size_t n)
{
    const auto *px = reinterpret_cast<const double *>(x);
    const auto *py = reinterpret_cast<const double *>(y);
    auto *po = reinterpret_cast<double *>(out);
    for (std::size_t i = 0; i < 2 * n; ++i) {
        const double p = s * px[i];
        po[i] = p + py[i];
    }
}

inline void mul(double ar, double ai, double br, double bi, double &re, double &im)
{
    const double rr = ar * br;
    const double ii = ai * bi;
    const double ri = ar * bi;
    const double ir = ai * br;
    re = rr - ii;
    im = ir + ri;
}

void multiply_scalar(const Complex *a, const Complex *b, Complex *out, std::size_t n)
{
    const auto *pa = reinterpret_cast<const double *>(a);
    const auto *pb = reinterpret_cast<const double *>(b);
    auto *po = reinterpret_cast<double *>(out);
    for (std::size_t i = 0; i < n; ++i) {
        double re, im;
        mul(pa[2 * i], pa[2 * i + 1], pb[2 * i], pb[2 * i + 1], re, im);
        po[2 * i] = re;
        po[2 * i + 1] = im;
    }
}

void scale_scalar(Complex s, const Complex *x, Complex *out, std::size_t n)
{
    const auto *px = reinterpret_cast<const double *>(x);
    auto *po = reinterpret_cast<double *>(out);
    const double sr = s.real(), si = s.imag();
    for (std::size_t i = 0; i < n; ++i) {
        double re, im;
        mul(px[2 * i], px[2 * i + 1], sr, si, re, im);
        po[2 * i] = re;
        po[2 * i + 1] = im;
    }
}

double dot_scalar(const double *x, const double *y, std::size_t n)
{
    double lane[4] = {0.0, 0.0, 0.0, 0.0};
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        for (std::size_t k = 0; k < 4; ++k) {
            const double p = x[i + k] * y[i + k];
            lane[k] = lane[k] + p;
        }
    double tail = 0.0;
    for (; i < n; ++i) {
        const double p = x[i] * y[i];
        tail = tail + p;
    }
    return ((lane[0] + lane[1]) + (lane[2] + lane[3])) + tail;
}

} // namespace

const KernelTable &scalar_table()
{
    static const KernelTable table{
        Isa::Scalar,
        add_scalar,
        axpy_scalar,
        multiply_scalar,
        scale_scalar,
        dot_scalar,
    };
    return table;
}

} // namespace uecal::kernels::detail
