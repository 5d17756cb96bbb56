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

#include <immintrin.h>

namespace uecal::kernels::detail {
namespace {

// Two complex values per __m256d: [re0, im0, re1, im1].

inline __m256d cmul(__m256d a, __m256d b)
{
    const __m256d b_re = _mm256_movedup_pd(b);
    const __m256d b_im = _mm256_permute_pd(b, 0xF);
    const __m256d a_sw = _mm256_permute_pd(a, 0x5);
    const __m256d t1 = _mm256_mul_pd(a, b_re);
    const __m256d t2 = _mm256_mul_pd(a_sw, b_im);
    return _mm256_addsub_pd(t1, t2);
}

inline const double *dp(const Complex *p) { return reinterpret_cast<const double *>(p); }
inline double *dp(Complex *p) { return reinterpret_cast<double *>(p); }

void add_avx2(const Complex *a, const Complex *b, Complex *out, std::size_t n)
{
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d va = _mm256_loadu_pd(dp(a + i));
        const __m256d vb = _mm256_loadu_pd(dp(b + i));
        _mm256_storeu_pd(dp(out + i), _mm256_add_pd(va, vb));
    }
    scalar_table().add(a + i, b + i, out + i, n - i);
}

void axpy_avx2(double s, const Complex *x, const Complex *y, Complex *out, std::size_t n)
{
    const __m256d vs = _mm256_set1_pd(s);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d vx = _mm256_loadu_pd(dp(x + i));
        const __m256d vy = _mm256_loadu_pd(dp(y + i));
        _mm256_storeu_pd(dp(out + i), _mm256_add_pd(_mm256_mul_pd(vs, vx), vy));
    }
    scalar_table().axpy(s, x + i, y + i, out + i, n - i);
}

void multiply_avx2(const Complex *a, const Complex *b, Complex *out, std::size_t n)
{
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d va = _mm256_loadu_pd(dp(a + i));
        const __m256d vb = _mm256_loadu_pd(dp(b + i));
        _mm256_storeu_pd(dp(out + i), cmul(va, vb));
    }
    scalar_table().multiply(a + i, b + i, out + i, n - i);
}

void scale_avx2(Complex s, const Complex *x, Complex *out, std::size_t n)
{
    const __m256d vs = _mm256_setr_pd(s.real(), s.imag(), s.real(), s.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d vx = _mm256_loadu_pd(dp(x + i));
        _mm256_storeu_pd(dp(out + i), cmul(vx, vs));
    }
    scalar_table().scale(s, x + i, out + i, n - i);
}

double dot_avx2(const double *x, const double *y, std::size_t n)
{
    __m256d vacc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        vacc = _mm256_add_pd(vacc, _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    alignas(32) double lane[4];
    _mm256_store_pd(lane, vacc);
    double tail = 0.0;
    for (; i < n; ++i) {
        const double p = x[i] * y[i];
        tail = tail + p;
    }
    return ((lane[0] + lane[1]) + (lane[2] + lane[3])) + tail;
}

} // namespace

const KernelTable &avx2_table()
{
    static const KernelTable table{
        Isa::Avx2,
        add_avx2,
        axpy_avx2,
        multiply_avx2,
        scale_avx2,
        dot_avx2,
    };
    return table;
}

} // namespace uecal::kernels::detail
