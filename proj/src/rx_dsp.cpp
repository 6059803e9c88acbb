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

#include "eepn/rx_dsp.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "allpass.hpp"
#include "eepn/error.hpp"

namespace eepn {

BlockGrid BlockGrid::make(std::size_t n_symbols, std::size_t m, std::size_t guard, Mode mode) {
    BlockGrid g;
    g.first = guard;
    g.block_len = m + 1;
    g.stride = mode == Mode::disjoint ? g.block_len : 1;
    const std::size_t usable = n_symbols > 2 * guard ? n_symbols - 2 * guard : 0;
    if (usable < g.block_len) {
        throw InvalidArgument("insufficient symbols for one full block: " + std::to_string(n_symbols) +
                              " symbols, guard " + std::to_string(guard) + ", block length " +
                              std::to_string(g.block_len));
    }
    g.count = (usable - g.block_len) / g.stride + 1;
    return g;
}

std::vector<std::size_t> BlockGrid::centers() const {
    std::vector<std::size_t> c(count);
    for (std::size_t b = 0; b < count; ++b) {
        c[b] = center(b);
    }
    return c;
}

double BlockSeries::mean() const {
    if (values.empty()) {
        throw InvalidArgument("mean of an empty series");
    }
    double s = 0.0;
    for (double v : values) {
        s += v;
    }
    return s / static_cast<double>(values.size());
}

ComplexSignal apply_cdc(const ComplexSignal& signal, double beta2_l) {
    return detail::quadratic_allpass(signal, beta2_l, -1.0);
}

CprResult cpr_idr(const ComplexSignal& rx, const ComplexSignal& tx, std::size_t window) {
    rx.validate();
    tx.validate();
    if (rx.size() != tx.size()) {
        throw InvalidArgument("rx and tx lengths differ");
    }
    if (window == 0 || window % 2 == 0) {
        throw InvalidArgument("CPR window must be odd and >= 1");
    }
    const std::size_t n = rx.size();
    constexpr double two_pi = 2.0 * std::numbers::pi;

    std::vector<double> raw(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (tx.samples[i] == cplx{}) {
            throw InvalidArgument("zero transmit symbol at index " + std::to_string(i));
        }
        raw[i] = std::arg(rx.samples[i] * std::conj(tx.samples[i]));
        if (i > 0) {
            raw[i] += two_pi * std::round((raw[i - 1] - raw[i]) / two_pi);
        }
    }

    CprResult out;
    out.phase_estimate.sample_rate = rx.sample_rate;
    out.phase_estimate.phases.resize(n);
    const std::size_t half = window / 2;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = i >= half ? i - half : 0;
        const std::size_t hi = std::min(n, i + half + 1);
        double s = 0.0;
        for (std::size_t j = lo; j < hi; ++j) {
            s += raw[j];
        }
        out.phase_estimate.phases[i] = s / static_cast<double>(hi - lo);
    }

    out.corrected = rx;
    for (std::size_t i = 0; i < n; ++i) {
        out.corrected.samples[i] *= std::polar(1.0, -out.phase_estimate.phases[i]);
    }
    return out;
}

BlockMetrics block_metrics(const ComplexSignal& rx, const ComplexSignal& tx, const BlockGrid& grid) {
    if (rx.size() != tx.size()) {
        throw InvalidArgument("rx and tx lengths differ");
    }
    if (grid.count == 0 || grid.end() > rx.size()) {
        throw InvalidArgument("block grid exceeds the signal length");
    }
    const std::size_t len = grid.block_len;
    const double inv_len = 1.0 / static_cast<double>(len);

    BlockMetrics out;
    out.distortion.block_size = grid.m();
    out.snr.block_size = grid.m();
    out.distortion.centers = grid.centers();
    out.snr.centers = out.distortion.centers;
    out.distortion.values.resize(grid.count);
    out.snr.values.resize(grid.count);

    auto finish = [&](std::size_t b, double err, double sig) {
        const double sigma2 = err * inv_len;
        out.distortion.values[b] = sigma2;
        out.snr.values[b] = sigma2 > 0.0 ? sig * inv_len / sigma2 : std::numeric_limits<double>::infinity();
    };

    if (grid.stride >= len) {
        for (std::size_t b = 0; b < grid.count; ++b) {
            double err = 0.0;
            double sig = 0.0;
            for (std::size_t i = grid.start(b); i < grid.start(b) + len; ++i) {
                err += std::norm(rx.samples[i] - tx.samples[i]);
                sig += std::norm(tx.samples[i]);
            }
            finish(b, err, sig);
        }
        return out;
    }

    // Overlapping blocks: prefix sums over the covered range.
    const std::size_t begin = grid.first;
    const std::size_t end = grid.end();
    std::vector<double> err_sum(end - begin + 1, 0.0);
    std::vector<double> sig_sum(end - begin + 1, 0.0);
    for (std::size_t i = begin; i < end; ++i) {
        err_sum[i - begin + 1] = err_sum[i - begin] + std::norm(rx.samples[i] - tx.samples[i]);
        sig_sum[i - begin + 1] = sig_sum[i - begin] + std::norm(tx.samples[i]);
    }
    for (std::size_t b = 0; b < grid.count; ++b) {
        const std::size_t s = grid.start(b) - begin;
        finish(b, err_sum[s + len] - err_sum[s], sig_sum[s + len] - sig_sum[s]);
    }
    return out;
}

BlockMetrics block_metrics(const ComplexSignal& rx, const ComplexSignal& tx, std::size_t m) {
    return block_metrics(rx, tx, BlockGrid::make(rx.size(), m));
}

}  // namespace eepn
