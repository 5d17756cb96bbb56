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

#include <cstdlib>
#include <stdexcept>
#include <string_view>

namespace uecal::kernels {

const char *to_string(Isa isa) noexcept
{
    switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
    }
    return "unknown";
}

const KernelTable *table_for(Isa isa)
{
    switch (isa) {
    case Isa::Scalar:
        return &detail::scalar_table();
    case Isa::Avx2:
#if defined(UECAL_WITH_AVX2)
        if (__builtin_cpu_supports("avx2"))
            return &detail::avx2_table();
#endif
        return nullptr;
    case Isa::Neon:
#if defined(UECAL_WITH_NEON)
        return &detail::neon_table(); // baseline on aarch64
#else
        return nullptr;
#endif
    }
    return nullptr;
}

std::vector<Isa> available()
{
    std::vector<Isa> out;
    for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon})
        if (table_for(isa) != nullptr)
            out.push_back(isa);
    return out;
}

namespace {

const KernelTable &select()
{
    if (const char *env = std::getenv("UECAL_KERNELS")) {
        const std::string_view want(env);
        for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon})
            if (want == to_string(isa)) {
                const KernelTable *t = table_for(isa);
                return t != nullptr ? *t : detail::scalar_table();
            }
    }
    for (Isa isa : {Isa::Avx2, Isa::Neon})
        if (const KernelTable *t = table_for(isa))
            return *t;
    return detail::scalar_table();
}

void require(bool ok, const char *what)
{
    if (!ok)
        throw std::invalid_argument(what);
}

} // namespace

const KernelTable &active()
{
    static const KernelTable &table = select();
    return table;
}

void add(std::span<const Complex> a, std::span<const Complex> b, std::span<Complex> out)
{
    require(a.size() == b.size() && out.size() == a.size(), "kernels::add: length mismatch");
    active().add(a.data(), b.data(), out.data(), a.size());
}

void axpy(double s, std::span<const Complex> x, std::span<const Complex> y, std::span<Complex> out)
{
    require(x.size() == y.size() && out.size() == x.size(), "kernels::axpy: length mismatch");
    active().axpy(s, x.data(), y.data(), out.data(), x.size());
}

void multiply(std::span<const Complex> a, std::span<const Complex> b, std::span<Complex> out)
{
    require(a.size() == b.size() && out.size() == a.size(), "kernels::multiply: length mismatch");
    active().multiply(a.data(), b.data(), out.data(), a.size());
}

void scale(Complex s, std::span<const Complex> x, std::span<Complex> out)
{
    require(out.size() == x.size(), "kernels::scale: length mismatch");
    active().scale(s, x.data(), out.data(), x.size());
}

double dot(std::span<const double> x, std::span<const double> y)
{
    require(x.size() == y.size(), "kernels::dot: length mismatch");
    return active().dot(x.data(), y.data(), x.size());
}

} // namespace uecal::kernels
