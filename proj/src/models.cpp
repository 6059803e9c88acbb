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

#include "eepn/models.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "eepn/error.hpp"

namespace eepn {

CdMemory cd_memory(const LinkParams& params, NcdMode mode) {
    params.validate();
    CdMemory mem;
    mem.tau_cd = 2.0 * std::numbers::pi * std::abs(params.beta2_l) * params.symbol_rate;
    const double samples_per_symbol = mode == NcdMode::oversampled ? 2.0 : 1.0;
    mem.n_cd = static_cast<std::size_t>(std::llround(samples_per_symbol * params.symbol_rate * mem.tau_cd));
    return mem;
}

std::vector<GroupDelayBin> group_delay_profile(const LinkParams& params, std::size_t n_bins) {
    params.validate();
    if (n_bins < 2) {
        throw InvalidArgument("group delay profile needs at least 2 bins");
    }
    const double r = params.symbol_rate;
    std::vector<GroupDelayBin> out(n_bins);
    for (std::size_t k = 0; k < n_bins; ++k) {
        // Mirror the upper half so the grid is exactly symmetric about f = 0.
        const double f = k < n_bins / 2 ? -r / 2.0 + r * static_cast<double>(k) / static_cast<double>(n_bins - 1)
                                         : r / 2.0 - r * static_cast<double>(n_bins - 1 - k) /
                                                         static_cast<double>(n_bins - 1);
        out[k] = {f, 2.0 * std::numbers::pi * params.beta2_l * f};
    }
    return out;
}

namespace {

void require_symbol_rate(const PhaseTrace& trace, const LinkParams& params) {
    trace.validate();
    if (std::abs(trace.sample_rate - params.symbol_rate) > 1e-9 * params.symbol_rate) {
        throw InvalidArgument("phase trace must be sampled at the symbol rate; resample first");
    }
}

std::vector<long long> symbol_delays(const LinkParams& params, std::size_t n_bins) {
    const auto profile = group_delay_profile(params, n_bins);
    std::vector<long long> d(n_bins);
    for (std::size_t k = 0; k < n_bins; ++k) {
        d[k] = std::llround(params.symbol_rate * profile[k].delay);
    }
    return d;
}

// Averages a per-index series over each block of the grid.
BlockSeries block_average(const CenteredSeries& series, const BlockGrid& grid, const char* what) {
    if (grid.count == 0 || !series.covers(grid.first, grid.end())) {
        throw InvalidArgument(std::string(what) + ": block grid [" + std::to_string(grid.first) + ", " +
                              std::to_string(grid.end()) + ") is not inside the defined range [" +
                              std::to_string(series.first) + ", " +
                              std::to_string(series.first + series.size()) + ")");
    }
    BlockSeries out;
    out.block_size = grid.m();
    out.centers = grid.centers();
    out.values.resize(grid.count);
    const double inv = 1.0 / static_cast<double>(grid.block_len);
    for (std::size_t b = 0; b < grid.count; ++b) {
        double s = 0.0;
        const std::size_t off = grid.start(b) - series.first;
        for (std::size_t i = 0; i < grid.block_len; ++i) {
            s += series.values[off + i];
        }
        out.values[b] = s * inv;
    }
    return out;
}

}  // namespace

SpectralPhaseError fdpe(const PhaseTrace& trace, const LinkParams& params, std::size_t center, std::size_t n_bins) {
    require_symbol_rate(trace, params);
    const auto profile = group_delay_profile(params, n_bins);
    SpectralPhaseError out;
    out.center = center;
    out.bins.reserve(n_bins);
    const auto n = static_cast<long long>(trace.size());
    for (const auto& bin : profile) {
        const long long idx = static_cast<long long>(center) + std::llround(params.symbol_rate * bin.delay);
        if (idx < 0 || idx >= n) {
            throw OutOfRange("FDPE at index " + std::to_string(center) + " needs trace sample " +
                             std::to_string(idx) + " outside [0, " + std::to_string(n) + ")");
        }
        out.bins.push_back({bin.frequency, trace.phases[static_cast<std::size_t>(idx)]});
    }
    return out;
}

CenteredSeries idr_mean_phase(const PhaseTrace& trace, std::size_t n_cd) {
    trace.validate();
    const std::size_t window = n_cd + 1;
    if (trace.size() < window) {
        throw InvalidArgument("trace of length " + std::to_string(trace.size()) + " is shorter than the window " +
                              std::to_string(window));
    }
    const auto& x = trace.phases;
    CenteredSeries out;
    out.first = window / 2;
    out.values.resize(x.size() - window + 1);

    // Running sum re-anchored every `window` steps to bound drift.
    double sum = 0.0;
    for (std::size_t s = 0; s < out.values.size(); ++s) {
        if (s % window == 0) {
            sum = 0.0;
            for (std::size_t i = s; i < s + window; ++i) {
                sum += x[i];
            }
        } else {
            sum += x[s + window - 1] - x[s - 1];
        }
        out.values[s] = sum / static_cast<double>(window);
    }
    return out;
}

namespace {

// Unevaluated sum hi + lo, updated with error-free transformations so that sliding
// additions and removals of squared deviations do not accumulate rounding.
struct DoubleDouble {
    double hi = 0.0;
    double lo = 0.0;

    void add(double v) noexcept {
        const double s = hi + v;
        const double bb = s - hi;
        lo += (hi - (s - bb)) + (v - bb);
        hi = s;
    }
    void add_square(double d, double sign) noexcept {
        const double p = d * d;
        add(sign * p);
        lo += sign * std::fma(d, d, -p);
    }
    double value() const noexcept { return hi + lo; }
};

double two_pass_variance(std::span<const double> w) {
    double m = 0.0;
    for (double v : w) {
        m += v;
    }
    m /= static_cast<double>(w.size());
    double s1 = 0.0;
    double s2 = 0.0;
    for (double v : w) {
        const double d = v - m;
        s1 += d;
        s2 += d * d;
    }
    const double inv = 1.0 / static_cast<double>(w.size());
    const double var = s2 * inv - (s1 * inv) * (s1 * inv);
    return var > 0.0 ? var : 0.0;
}

}  // namespace

CenteredSeries moving_variance(std::span<const double> x, std::size_t window) {
    if (window == 0) {
        throw InvalidArgument("variance window must be >= 1");
    }
    if (x.size() < window) {
        throw InvalidArgument("series of length " + std::to_string(x.size()) + " is shorter than the window " +
                              std::to_string(window));
    }
    CenteredSeries out;
    out.first = window / 2;
    out.values.assign(x.size() - window + 1, 0.0);
    if (window == 1) {
        return out;
    }
    const double inv_w = 1.0 / static_cast<double>(window);

    // Deviations from an anchor near the local mean, re-anchored once per `window` slides.
    // When the window mean has drifted far from the anchor relative to the spread, the
    // subtraction E[d^2] - E[d]^2 loses digits and the window is evaluated directly.
    constexpr double max_conditioning = 64.0;
    double anchor = 0.0;
    DoubleDouble s1;
    DoubleDouble s2;
    for (std::size_t s = 0; s < out.values.size(); ++s) {
        if (s % window == 0) {
            anchor = 0.0;
            for (std::size_t i = s; i < s + window; ++i) {
                anchor += x[i];
            }
            anchor *= inv_w;
            s1 = {};
            s2 = {};
            for (std::size_t i = s; i < s + window; ++i) {
                const double d = x[i] - anchor;
                s1.add(d);
                s2.add_square(d, 1.0);
            }
        } else {
            const double in = x[s + window - 1] - anchor;
            const double gone = x[s - 1] - anchor;
            s1.add(in);
            s1.add(-gone);
            s2.add_square(in, 1.0);
            s2.add_square(gone, -1.0);
        }
        const double mean_dev = s1.value() * inv_w;
        const double mean_sq = s2.value() * inv_w;
        const double var = mean_sq - mean_dev * mean_dev;
        if (var * max_conditioning >= mean_sq) {
            out.values[s] = var;
        } else {
            out.values[s] = two_pass_variance(x.subspan(s, window));
        }
    }
    return out;
}

CenteredSeries moving_variance(const PhaseTrace& trace, std::size_t window) {
    trace.validate();
    return moving_variance(std::span<const double>(trace.phases), window);
}

BlockSeries temporal_gn_predict(const PhaseTrace& trace, std::size_t n_cd, const BlockGrid& grid) {
    return block_average(moving_variance(trace, n_cd + 1), grid, "temporal GN prediction");
}

BlockSeries temporal_gn_predict(const PhaseTrace& trace, std::size_t n_cd, std::size_t m) {
    return temporal_gn_predict(trace, n_cd, BlockGrid::make(trace.size(), m, (n_cd + 1) / 2));
}

BlockSeries fdpe_distortion(const PhaseTrace& trace, const LinkParams& params, const BlockGrid& grid) {
    require_symbol_rate(trace, params);
    if (grid.count == 0) {
        throw InvalidArgument("empty block grid");
    }
    const std::size_t n_bins = grid.block_len < 2 ? 2 : grid.block_len;
    const auto delays = symbol_delays(params, n_bins);
    const auto mean_phase = idr_mean_phase(trace, cd_memory(params).n_cd);

    const std::size_t begin = grid.first;
    const std::size_t end = grid.end();
    const auto n = static_cast<long long>(trace.size());
    if (static_cast<long long>(begin) + delays.front() < 0 || static_cast<long long>(end - 1) + delays.back() >= n ||
        static_cast<long long>(begin) + delays.back() < 0 || static_cast<long long>(end - 1) + delays.front() >= n) {
        throw OutOfRange("FDPE delays around the block grid leave the trace");
    }
    if (!mean_phase.covers(begin, end)) {
        throw OutOfRange("IDR mean phase is undefined on part of the block grid");
    }

    CenteredSeries per_symbol;
    per_symbol.first = begin;
    per_symbol.values.resize(end - begin);
    const double inv_bins = 1.0 / static_cast<double>(n_bins);
    for (std::size_t l = begin; l < end; ++l) {
        const double ref = mean_phase.at(l);
        const double* base = trace.phases.data() + l;
        double acc = 0.0;
        for (long long d : delays) {
            const double e = base[d] - ref;
            acc += e * e;
        }
        per_symbol.values[l - begin] = acc * inv_bins;
    }
    return block_average(per_symbol, grid, "FDPE distortion");
}

BlockSeries sota_gn_predict(double sigma2, const BlockGrid& grid, std::optional<std::uint64_t> seed) {
    if (!(sigma2 >= 0.0) || !std::isfinite(sigma2)) {
        throw InvalidArgument("constant distortion power must be finite and non-negative");
    }
    BlockSeries out;
    out.block_size = grid.m();
    out.centers = grid.centers();
    out.values.assign(grid.count, sigma2);
    if (!seed || sigma2 == 0.0) {
        return out;
    }
    std::mt19937_64 rng(*seed);
    std::normal_distribution<double> component(0.0, std::sqrt(sigma2 / 2.0));
    for (auto& v : out.values) {
        double p = 0.0;
        for (std::size_t i = 0; i < grid.block_len; ++i) {
            const double re = component(rng);
            const double im = component(rng);
            p += re * re + im * im;
        }
        v = p / static_cast<double>(grid.block_len);
    }
    return out;
}

}  // namespace eepn
