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

#include "uecal/core/types.hpp"

namespace uecal::harness {

/// arccos(|<d_hat, d>| / (|d_hat| |d|)) in radians, in [0, pi/2]; 0 means the
/// directions agree. Evaluated in a form that stays accurate for nearly
/// parallel vectors. Throws InvalidArgument on a length mismatch or zero norm.
double cosine_similarity(const RVector &d_hat, const RVector &d_truth);

/// wrap(alpha_hat - alpha) elementwise.
RVector wrapped_errors(const RVector &alpha_hat, const RVector &alpha_truth);

/// Sample variance (divide by M - 1) of the wrapped errors across chains.
/// Throws InvalidArgument for M < 2 or a length mismatch.
double phase_error_variance(const RVector &alpha_hat, const RVector &alpha_truth);

/// Mean of the squared wrapped errors across chains.
double phase_error_mse(const RVector &alpha_hat, const RVector &alpha_truth);

} // namespace uecal::harness
