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

#include "eepn/signal.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "eepn/error.hpp"
#include "fft.hpp"

namespace eepn {

double ComplexSignal::energy() const noexcept {
    double e = 0.0;
    for (const auto& s : samples) {
        e += std::norm(s);
    }
    return e;
}

double ComplexSignal::mean_power() const noexcept {
    return samples.empty() ? 0.0 : energy() / static_cast<double>(samples.size());
}

void ComplexSignal::validate() const {
    if (samples.empty()) {
        throw InvalidArgument("signal is empty");
    }
    if (!(sample_rate > 0.0) || !std::isfinite(sample_rate)) {
        throw InvalidArgument("sample rate must be positive and finite");
    }
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (!std::isfinite(samples[i].real()) || !std::isfinite(samples[i].imag())) {
            throw InvalidArgument("non-finite sample at index " + std::to_string(i));
        }
    }
}

namespace {

unsigned gray_to_binary(unsigned g) {
    for (unsigned shift = 1; shift < 32; shift <<= 1) {
        g ^= g >> shift;
    }
    return g;
}

}  // namespace

Constellation Constellation::square_qam(int order) {
    if (order != 4 && order != 16 && order != 64) {
        throw InvalidArgument("unsupported QAM order " + std::to_string(order) + " (expected 4, 16 or 64)");
    }
    const int bits_per_axis = order == 4 ? 1 : order == 16 ? 2 : 3;
    const unsigned side = 1u << bits_per_axis;
    const double scale = 1.0 / std::sqrt(2.0 * (order - 1) / 3.0);

    Constellation c;
    c.order = order;
    c.points.reserve(static_cast<std::size_t>(order));
    for (unsigned label = 0; label < static_cast<unsigned>(order); ++label) {
        const unsigned gi = label >> bits_per_axis;
        const unsigned gq = label & (side - 1);
        const double i = 2.0 * gray_to_binary(gi) - (side - 1.0);
        const double q = 2.0 * gray_to_binary(gq) - (side - 1.0);
        c.points.emplace_back(i * scale, q * scale);
    }
    return c;
}

ComplexSignal generate_qam(int order, std::size_t n, std::uint64_t seed, double symbol_rate) {
    const auto constellation = Constellation::square_qam(order);
    if (n == 0) {
        throw InvalidArgument("symbol count must be at least 1");
    }
    if (!(symbol_rate > 0.0)) {
        throw InvalidArgument("symbol rate must be positive");
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, order - 1);

    ComplexSignal out;
    out.sample_rate = symbol_rate;
    out.samples.resize(n);
    for (auto& s : out.samples) {
        s = constellation.points[static_cast<std::size_t>(pick(rng))];
    }
    return out;
}

std::vector<double> rrc_taps(int oversampling, double rolloff, int span_symbols) {
    if (oversampling < 2) {
        throw InvalidArgument("oversampling must be >= 2");
    }
    if (!(rolloff >= 0.0 && rolloff <= 1.0)) {
        throw InvalidArgument("roll-off must lie in [0, 1]");
    }
    if (span_symbols < 8) {
        throw InvalidArgument("filter span must be >= 8 symbols");
    }
    constexpr double pi = std::numbers::pi;
    const int half = span_symbols * oversampling / 2;
    std::vector<double> h;
    h.reserve(static_cast<std::size_t>(2 * half + 1));
    for (int n = -half; n <= half; ++n) {
        const double t = static_cast<double>(n) / oversampling;
        double v = 0.0;
        if (n == 0) {
            v = 1.0 - rolloff + 4.0 * rolloff / pi;
        } else if (rolloff > 0.0 && std::abs(std::abs(t) - 1.0 / (4.0 * rolloff)) < 1e-9) {
            // Removable singularity at |t| = 1/(4 rolloff).
            v = rolloff / std::sqrt(2.0) *
                ((1.0 + 2.0 / pi) * std::sin(pi / (4.0 * rolloff)) + (1.0 - 2.0 / pi) * std::cos(pi / (4.0 * rolloff)));
        } else {
            const double x = 4.0 * rolloff * t;
            v = (std::sin(pi * t * (1.0 - rolloff)) + 4.0 * rolloff * t * std::cos(pi * t * (1.0 + rolloff))) /
                (pi * t * (1.0 - x * x));
        }
        h.push_back(v);
    }
    double energy = 0.0;
    for (double v : h) {
        energy += v * v;
    }
    const double norm = 1.0 / std::sqrt(energy);
    for (double& v : h) {
        v *= norm;
    }
    return h;
}

std::vector<cplx> convolve(std::span<const cplx> x, std::span<const double> taps) {
    if (x.empty() || taps.empty()) {
        return {};
    }
    const std::size_t full = x.size() + taps.size() - 1;
    const std::size_t nfft = detail::fast_fft_size(full);

    std::vector<cplx> a(nfft, cplx{});
    std::copy(x.begin(), x.end(), a.begin());
    std::vector<cplx> b(nfft, cplx{});
    for (std::size_t i = 0; i < taps.size(); ++i) {
        b[i] = taps[i];
    }
    detail::fft_inplace(a, detail::FftDirection::forward);
    detail::fft_inplace(b, detail::FftDirection::forward);
    const double scale = 1.0 / static_cast<double>(nfft);
    for (std::size_t k = 0; k < nfft; ++k) {
        a[k] *= b[k] * scale;
    }
    detail::fft_inplace(a, detail::FftDirection::inverse);
    a.resize(full);
    return a;
}

ComplexSignal rrc_shape(const ComplexSignal& symbols, int oversampling, double rolloff, int span_symbols) {
    const auto taps = rrc_taps(oversampling, rolloff, span_symbols);
    symbols.validate();
    const auto os = static_cast<std::size_t>(oversampling);

    std::vector<cplx> stuffed(symbols.size() * os, cplx{});
    for (std::size_t k = 0; k < symbols.size(); ++k) {
        stuffed[k * os] = symbols.samples[k];
    }
    auto full = convolve(stuffed, taps);
    const std::size_t delay = (taps.size() - 1) / 2;

    ComplexSignal out;
    out.sample_rate = symbols.sample_rate * oversampling;
    out.samples.assign(full.begin() + static_cast<std::ptrdiff_t>(delay),
                       full.begin() + static_cast<std::ptrdiff_t>(delay + stuffed.size()));
    return out;
}

ComplexSignal matched_downsample(const ComplexSignal& signal, int oversampling, double rolloff, int span_symbols) {
    const auto taps = rrc_taps(oversampling, rolloff, span_symbols);
    signal.validate();
    const auto os = static_cast<std::size_t>(oversampling);
    if (signal.size() % os != 0) {
        throw InvalidArgument("signal length " + std::to_string(signal.size()) +
                              " is not a multiple of the oversampling factor " + std::to_string(oversampling));
    }
    const auto full = convolve(signal.samples, taps);
    const std::size_t delay = (taps.size() - 1) / 2;

    ComplexSignal out;
    out.sample_rate = signal.sample_rate / oversampling;
    out.samples.resize(signal.size() / os);
    for (std::size_t k = 0; k < out.samples.size(); ++k) {
        out.samples[k] = full[k * os + delay];
    }
    return out;
}

std::vector<cplx> windowed_dft(const ComplexSignal& signal, std::size_t center, std::size_t width) {
    if (width == 0) {
        throw InvalidArgument("DFT width must be at least 1");
    }
    if (center < width / 2 || center - width / 2 + width > signal.size()) {
        throw OutOfRange("window of width " + std::to_string(width) + " around index " + std::to_string(center) +
                         " exceeds signal of length " + std::to_string(signal.size()));
    }
    const std::size_t start = center - width / 2;
    std::vector<cplx> bins(signal.samples.begin() + static_cast<std::ptrdiff_t>(start),
                           signal.samples.begin() + static_cast<std::ptrdiff_t>(start + width));
    detail::fft_inplace(bins, detail::FftDirection::forward);
    const double scale = 1.0 / std::sqrt(static_cast<double>(width));
    for (auto& b : bins) {
        b *= scale;
    }
    return bins;
}

}  // namespace eepn
