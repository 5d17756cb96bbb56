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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace uecal {

// No Eigen here: this header is compiled into the -mavx2 translation unit.
using Complex = std::complex<double>;

} // namespace uecal

/// Elementwise per-chain arithmetic used on the Monte-Carlo hot path.
///
/// Every table computes bit-identical results: complex products use the
/// (ar*br - ai*bi, ar*bi + ai*br) form with no fused multiply-add, and the real
/// dot product reduces in a fixed 4-lane order. The scalar table is the
/// reference; SIMD tables are checked against it in tests/unit/test_kernels.cpp.
namespace uecal::kernels {

enum class Isa { Scalar, Avx2, Neon };

const char *to_string(Isa isa) noexcept;

struct KernelTable
{
    Isa isa;

    /// out[i] = a[i] + b[i]
    void (*add)(const Complex *a, const Complex *b, Complex *out, std::size_t n);
    /// out[i] = s * x[i] + y[i], real s
    void (*axpy)(double s, const Complex *x, const Complex *y, Complex *out, std::size_t n);
    /// out[i] = a[i] * b[i]
    void (*multiply)(const Complex *a, const Complex *b, Complex *out, std::size_t n);
    /// out[i] = s * x[i]
    void (*scale)(Complex s, const Complex *x, Complex *out, std::size_t n);
    /// sum_i x[i] * y[i]
    double (*dot)(const double *x, const double *y, std::size_t n);
};

/// Table for the best ISA the running CPU supports. The UECAL_KERNELS
/// environment variable (scalar, avx2, neon) overrides the choice; an
/// unavailable request falls back to scalar.
const KernelTable &active();

/// nullptr when the ISA was not compiled in or the CPU lacks it.
const KernelTable *table_for(Isa isa);

std::vector<Isa> available();

// Span conveniences over the active table.

void add(std::span<const Complex> a, std::span<const Complex> b, std::span<Complex> out);
void axpy(double s, std::span<const Complex> x, std::span<const Complex> y, std::span<Complex> out);
void multiply(std::span<const Complex> a, std::span<const Complex> b, std::span<Complex> out);
void scale(Complex s, std::span<const Complex> x, std::span<Complex> out);
double dot(std::span<const double> x, std::span<const double> y);

} // namespace uecal::kernels
