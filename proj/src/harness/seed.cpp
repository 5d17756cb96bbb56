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

#include "uecal/harness/seed.hpp"

#include <bit>

namespace uecal::harness {

std::uint64_t mix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t double_bits(double x) noexcept
{
    return std::bit_cast<std::uint64_t>(x == 0.0 ? 0.0 : x);
}

std::uint64_t hash_words(std::uint64_t master, std::initializer_list<std::uint64_t> words) noexcept
{
    std::uint64_t h = mix64(master);
    for (std::uint64_t w : words)
        h = mix64(h ^ w);
    return h;
}

std::uint64_t derive_seed(std::uint64_t master, double snr_db, double gamma, double phi_deg,
                          std::uint64_t realization, SeedStream stream) noexcept
{
    return hash_words(master, {double_bits(snr_db), double_bits(gamma), double_bits(phi_deg), realization,
                               static_cast<std::uint64_t>(stream)});
}

} // namespace uecal::harness
