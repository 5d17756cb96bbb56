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

#include "uecal/core/phase.hpp"

#include "uecal/core/error.hpp"

#include <cmath>

namespace uecal {

double wrap_phase(double radians)
{
    if (!std::isfinite(radians))
        throw InvalidArgument("wrap_phase: non-finite input");

    // remainder() lands in [-pi, pi]; only the lower endpoint needs folding.
    double r = std::remainder(radians, kTwoPi);
    if (r <= -kPi)
        r += kTwoPi;
    if (r > kPi)
        r -= kTwoPi;
    return r;
}

} // namespace uecal
