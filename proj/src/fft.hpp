// SPDX-License-Identifier: Apache-2.0
//
// eepn-lab: equalization-enhanced phase noise simulation and modelling
// Copyright (C) 2026 The eepn-lab Authors
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

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace eepn::detail {

enum class FftDirection { forward, inverse };

// Unnormalized in-place DFT. Forward uses the e^{-j2pi kn/N} kernel.
void fft_inplace(std::vector<std::complex<double>>& data, FftDirection dir);

// Smallest size >= n whose only prime factors are 2, 3, 5.
std::size_t fast_fft_size(std::size_t n);

// Signed frequency (Hz) of FFT bin k for an N-point transform at sample_rate.
inline double bin_frequency(std::size_t k, std::size_t n, double sample_rate) {
    const auto signed_k = k < (n + 1) / 2 ? static_cast<double>(k) : static_cast<double>(k) - static_cast<double>(n);
    return signed_k * sample_rate / static_cast<double>(n);
}

}  // namespace eepn::detail
