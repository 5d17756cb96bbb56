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

#include <cstdint>
#include <initializer_list>

namespace uecal::harness {

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Bit pattern of a double with -0.0 folded onto +0.0.
std::uint64_t double_bits(double x) noexcept;

/// Order-sensitive hash of a word sequence, seeded by `master`.
std::uint64_t hash_words(std::uint64_t master, std::initializer_list<std::uint64_t> words) noexcept;

/// Stream tags for derive_seed.
enum class SeedStream : std::uint64_t { Truth = 0, Observation = 1 };

/// Child seed of one realization. Depends only on the master seed, the grid
/// point coordinates, the realization index and the stream, never on grid
/// iteration order or thread count.
std::uint64_t derive_seed(std::uint64_t master, double snr_db, double gamma, double phi_deg,
                          std::uint64_t realization, SeedStream stream) noexcept;

} // namespace uecal::harness
