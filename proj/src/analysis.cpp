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

#include "eepn/analysis.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <string>
#include <string_view>

#include "eepn/error.hpp"

namespace eepn {

Correlation pearson(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw InvalidArgument("series lengths differ: " + std::to_string(a.size()) + " vs " +
                              std::to_string(b.size()));
    }
    if (a.size() < 2) {
        throw InvalidArgument("correlation needs at least 2 points");
    }
    const auto constant = [](std::span<const double> v) {
        return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
    };
    if (constant(a) || constant(b)) {
        return {0.0, false};
    }
    const auto n = static_cast<double>(a.size());
    double ma = 0.0;
    double mb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= n;
    mb /= n;
    double saa = 0.0;
    double sbb = 0.0;
    double sab = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = a[i] - ma;
        const double db = b[i] - mb;
        saa += da * da;
        sbb += db * db;
        sab += da * db;
    }
    if (!(saa > 0.0) || !(sbb > 0.0)) {
        return {0.0, false};
    }
    return {std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0), true};
}

void require_same_grid(const BlockSeries& a, const BlockSeries& b) {
    const std::size_t n = std::min(a.centers.size(), b.centers.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (a.centers[i] != b.centers[i]) {
            throw InvalidArgument("block grids differ at index " + std::to_string(i) + " (center " +
                                  std::to_string(a.centers[i]) + " vs " + std::to_string(b.centers[i]) + ")");
        }
    }
    if (a.centers.size() != b.centers.size()) {
        throw InvalidArgument("block grids differ at index " + std::to_string(n) + " (lengths " +
                              std::to_string(a.centers.size()) + " vs " + std::to_string(b.centers.size()) + ")");
    }
}

Correlation pearson(const BlockSeries& a, const BlockSeries& b) {
    require_same_grid(a, b);
    return pearson(std::span<const double>(a.values), std::span<const double>(b.values));
}

std::vector<HistogramBin> histogram(std::span<const double> values, std::size_t n_bins, bool log_x) {
    if (values.empty()) {
        throw InvalidArgument("histogram of an empty series");
    }
    if (n_bins < 2) {
        throw InvalidArgument("histogram needs at least 2 bins");
    }
    const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
        throw InvalidArgument("histogram input contains non-finite values");
    }
    if (log_x && !(lo > 0.0)) {
        throw InvalidArgument("logarithmic binning needs strictly positive values");
    }

    std::vector<HistogramBin> bins(n_bins, HistogramBin{0.0, 0.0});
    const double total = static_cast<double>(values.size());
    if (lo == hi) {
        for (std::size_t k = 0; k < n_bins; ++k) {
            bins[k].center = lo;
        }
        bins[0].probability = 1.0;
        return bins;
    }

    const double a = log_x ? std::log(lo) : lo;
    const double b = log_x ? std::log(hi) : hi;
    const double width = (b - a) / static_cast<double>(n_bins);
    for (std::size_t k = 0; k < n_bins; ++k) {
        const double mid = a + (static_cast<double>(k) + 0.5) * width;
        bins[k].center = log_x ? std::exp(mid) : mid;
    }
    std::vector<std::size_t> counts(n_bins, 0);
    for (double v : values) {
        const double x = log_x ? std::log(v) : v;
        auto k = static_cast<std::size_t>((x - a) / width);
        counts[std::min(k, n_bins - 1)] += 1;
    }
    for (std::size_t k = 0; k < n_bins; ++k) {
        bins[k].probability = static_cast<double>(counts[k]) / total;
    }
    return bins;
}

std::vector<HistogramBin> histogram(const BlockSeries& series, std::size_t n_bins, bool log_x) {
    return histogram(std::span<const double>(series.values), n_bins, log_x);
}

double quantile(std::span<const double> values, double q) {
    if (values.empty()) {
        throw InvalidArgument("quantile of an empty series");
    }
    if (!(q >= 0.0 && q <= 1.0)) {
        throw InvalidArgument("quantile level must lie in [0, 1]");
    }
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto i = static_cast<std::size_t>(pos);
    if (i + 1 >= sorted.size()) {
        return sorted.back();
    }
    const double frac = pos - static_cast<double>(i);
    return sorted[i] + frac * (sorted[i + 1] - sorted[i]);
}

BlockSeries snr_series(const BlockSeries& power, double signal_power) {
    if (!(signal_power > 0.0)) {
        throw InvalidArgument("signal power must be positive");
    }
    BlockSeries out = power;
    for (auto& v : out.values) {
        v = v > 0.0 ? 10.0 * std::log10(signal_power / v) : std::numeric_limits<double>::infinity();
    }
    return out;
}

namespace {

constexpr std::string_view csv_header = "block_index,value";

void put_double(std::ostream& out, double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    out.write(buf, res.ptr - buf);
}

}  // namespace

void write_series_csv(std::ostream& out, const BlockSeries& series) {
    out << csv_header << '\n';
    for (std::size_t i = 0; i < series.size(); ++i) {
        out << series.centers[i] << ',';
        put_double(out, series.values[i]);
        out << '\n';
    }
}

BlockSeries read_series_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw FormatError("empty CSV file", 0);
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    if (line != csv_header) {
        throw FormatError("expected header '" + std::string(csv_header) + "'", 1);
    }
    BlockSeries series;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw FormatError("expected two columns", line_no);
        }
        std::size_t center = 0;
        double value = 0.0;
        const char* b = line.data();
        const auto r1 = std::from_chars(b, b + comma, center);
        const auto r2 = std::from_chars(b + comma + 1, b + line.size(), value);
        if (r1.ec != std::errc{} || r1.ptr != b + comma || r2.ec != std::errc{} || r2.ptr != b + line.size()) {
            // from_chars rejects "inf"; accept it for infinite-SNR sentinels.
            const std::string_view tail(b + comma + 1, line.size() - comma - 1);
            if (r1.ec == std::errc{} && r1.ptr == b + comma && (tail == "inf" || tail == "+inf")) {
                value = std::numeric_limits<double>::infinity();
            } else {
                throw FormatError("cannot parse row '" + line + "'", line_no);
            }
        }
        if (!series.centers.empty() && center <= series.centers.back()) {
            throw FormatError("block indices must be strictly increasing", line_no);
        }
        series.centers.push_back(center);
        series.values.push_back(value);
    }
    if (series.centers.size() >= 2) {
        series.block_size = series.centers[1] - series.centers[0] - 1;
    }
    return series;
}

void save_series_csv(const std::filesystem::path& path, const BlockSeries& series) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    write_series_csv(out, series);
    if (!out) {
        throw IoError("write failed for " + path.string());
    }
}

BlockSeries load_series_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    return read_series_csv(in);
}

void write_histogram_csv(std::ostream& out, std::span<const HistogramBin> bins) {
    out << "bin_center,probability\n";
    for (const auto& b : bins) {
        put_double(out, b.center);
        out << ',';
        put_double(out, b.probability);
        out << '\n';
    }
}

}  // namespace eepn
