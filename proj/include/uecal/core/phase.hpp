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

#include <numbers>

namespace uecal {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Reduces a phase to the half-open interval (-pi, pi]. Every phase that leaves
/// this library goes through here. Throws InvalidArgument on non-finite input.
double wrap_phase(double radians);

inline constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }

} // namespace uecal
