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
#include <cstdint>
#include <span>
#include <vector>

namespace eepn {

using cplx = std::complex<double>;

/// Complex baseband samples at a fixed sample rate (Hz).
///
/// Samples are finite and non-empty for every signal produced by this library;
/// `validate()` enforces that for signals built by hand.
struct ComplexSignal {
    std::vector<cplx> samples;
    double sample_rate = 0.0;

    std::size_t size() const noexcept { return samples.size(); }
    double energy() const noexcept;
    double mean_power() const noexcept;
    void validate() const;
};

/// Gray-mapped square QAM with unit average power. `points[i]` is the symbol for label i.
struct Constellation {
    int order = 0;
    std::vector<cplx> points;

    static Constellation square_qam(int order);
};

/// `n` i.i.d. uniform symbols of a square QAM constellation at `symbol_rate`.
/// Throws InvalidArgument for orders other than 4, 16, 64.
ComplexSignal generate_qam(int order, std::size_t n, std::uint64_t seed, double symbol_rate = 1.0);

// Defaults for the pulse shaper. The roll-off is close to Nyquist signalling; the span
// is long enough for the truncated cascade to stay below -50 dB ISI at that roll-off.
inline constexpr double default_rrc_rolloff = 0.01;
inline constexpr int default_oversampling = 2;
inline constexpr int default_rrc_span = 256;

/// Root-raised-cosine taps covering +-span/2 symbols (span*oversampling + 1 taps),
/// normalized to unit energy so that the RRC->RRC cascade is 1 at the symbol instant.
std::vector<double> rrc_taps(int oversampling, double rolloff, int span_symbols);

/// Zero-stuffing upsampler followed by the RRC FIR. The filter delay is removed, so
/// symbol k sits at output sample k*oversampling and the output has n*oversampling samples.
ComplexSignal rrc_shape(const ComplexSignal& symbols, int oversampling, double rolloff = default_rrc_rolloff,
                        int span_symbols = default_rrc_span);

/// Matched RRC filter then decimation to one sample per symbol at the symbol centers.
ComplexSignal matched_downsample(const ComplexSignal& signal, int oversampling, double rolloff = default_rrc_rolloff,
                                 int span_symbols = default_rrc_span);

/// Linear ("full") convolution of a complex sequence with real taps, computed via FFT.
std::vector<cplx> convolve(std::span<const cplx> x, std::span<const double> taps);

/// Unitary DFT of the window [center - width/2, center - width/2 + width). Bins are in
/// natural FFT order; sum |bins|^2 equals the window energy.
std::vector<cplx> windowed_dft(const ComplexSignal& signal, std::size_t center, std::size_t width);

}  // namespace eepn
