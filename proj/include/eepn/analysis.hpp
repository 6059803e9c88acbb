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
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "eepn/rx_dsp.hpp"

namespace eepn {

/// Pearson correlation. A zero-variance input makes rho undefined; it is then reported
/// as 0 with `defined == false`.
struct Correlation {
    double rho = 0.0;
    bool defined = false;
};

Correlation pearson(std::span<const double> a, std::span<const double> b);
/// Throws InvalidArgument naming the first index where the block centers differ.
Correlation pearson(const BlockSeries& a, const BlockSeries& b);

/// Throws InvalidArgument when the two series are not on the same block grid.
void require_same_grid(const BlockSeries& a, const BlockSeries& b);

struct HistogramBin {
    double center;
    double probability;
};

/// Normalized histogram over [min, max]. With log_x the bin edges are geometric, which
/// needs strictly positive values. A constant series yields one occupied bin.
std::vector<HistogramBin> histogram(std::span<const double> values, std::size_t n_bins, bool log_x = false);
std::vector<HistogramBin> histogram(const BlockSeries& series, std::size_t n_bins, bool log_x = false);

/// Empirical quantile with linear interpolation between order statistics.
double quantile(std::span<const double> values, double q);

/// 10 log10(signal_power / value) per block; zero power maps to +inf.
BlockSeries snr_series(const BlockSeries& power, double signal_power);

/// CSV with header `block_index,value`; block_index is the block's center symbol index.
void write_series_csv(std::ostream& out, const BlockSeries& series);
BlockSeries read_series_csv(std::istream& in);
void save_series_csv(const std::filesystem::path& path, const BlockSeries& series);
BlockSeries load_series_csv(const std::filesystem::path& path);

void write_histogram_csv(std::ostream& out, std::span<const HistogramBin> bins);

}  // namespace eepn
