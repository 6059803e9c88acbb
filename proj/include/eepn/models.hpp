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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "eepn/channel.hpp"
#include "eepn/rx_dsp.hpp"

namespace eepn {

/// How the CD memory is counted when used as a moving-variance window.
/// `formula` counts at the symbol rate (N = R * tau_cd). `oversampled` counts at two samples
/// per symbol, which puts the 130 GBd / 18 ns/nm link near 4875 samples.
enum class NcdMode { formula, oversampled };

struct CdMemory {
    double tau_cd = 0.0;    // s, 2 pi |beta2 L| R
    std::size_t n_cd = 0;   // samples
};

CdMemory cd_memory(const LinkParams& params, NcdMode mode = NcdMode::formula);

struct GroupDelayBin {
    double frequency;  // Hz
    double delay;      // s
};

/// Group delay 2 pi beta2L f of the CDC filter on n_bins frequencies uniformly spanning
/// [-R/2, R/2] (both edges included).
std::vector<GroupDelayBin> group_delay_profile(const LinkParams& params, std::size_t n_bins);

struct SpectralBin {
    double frequency;  // Hz
    double phase;      // rad
};

/// Frequency-dependent phase error at one symbol instant: each bin carries the LO phase
/// delayed by its group delay, rounded to whole symbols.
struct SpectralPhaseError {
    std::size_t center = 0;
    std::vector<SpectralBin> bins;
};

/// `trace` must be sampled at the symbol rate. Throws OutOfRange when a delayed index
/// leaves the trace.
SpectralPhaseError fdpe(const PhaseTrace& trace, const LinkParams& params, std::size_t center, std::size_t n_bins);

/// Values of a centered window statistic. values[i] belongs to sample index first + i;
/// a window of length W starting at s is attributed to index s + W/2.
struct CenteredSeries {
    std::size_t first = 0;
    std::vector<double> values;

    std::size_t size() const noexcept { return values.size(); }
    bool covers(std::size_t begin, std::size_t end) const noexcept {
        return begin >= first && end <= first + values.size();
    }
    double at(std::size_t index) const { return values.at(index - first); }
};

/// Mean phase over the n_cd + 1 samples centered on each index (the common phase an ideal
/// data-aided CPR sees). Only indices where the whole window fits are returned.
CenteredSeries idr_mean_phase(const PhaseTrace& trace, std::size_t n_cd);

/// Population variance (divide by `window`) over each full centered window. Streaming,
/// O(n) regardless of window length.
CenteredSeries moving_variance(std::span<const double> values, std::size_t window);
CenteredSeries moving_variance(const PhaseTrace& trace, std::size_t window);

/// Temporal GN model: moving variance of the LO phase over n_cd + 1 symbols, averaged
/// over each block of `grid`. Throws InvalidArgument when a block falls outside the
/// range where the variance is defined.
BlockSeries temporal_gn_predict(const PhaseTrace& trace, std::size_t n_cd, const BlockGrid& grid);
/// Disjoint blocks of M + 1 symbols over the defined range, guard (n_cd + 1)/2 at each end.
BlockSeries temporal_gn_predict(const PhaseTrace& trace, std::size_t n_cd, std::size_t m);

/// Frequency-domain counterpart of the temporal model: per symbol, the mean squared
/// deviation of grid.block_len FDPE bins from the IDR mean phase, averaged per block.
BlockSeries fdpe_distortion(const PhaseTrace& trace, const LinkParams& params, const BlockGrid& grid);

/// Constant-variance baseline. Without a seed every block equals sigma2; with a seed each
/// block is the mean power of M + 1 complex Gaussian draws of variance sigma2.
BlockSeries sota_gn_predict(double sigma2, const BlockGrid& grid, std::optional<std::uint64_t> seed = std::nullopt);

}  // namespace eepn
