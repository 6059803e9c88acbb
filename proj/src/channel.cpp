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

#include "eepn/channel.hpp"

#include <Eigen/Dense>

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <string>
#include <string_view>

#include "eepn/error.hpp"
#include "allpass.hpp"
#include "fft.hpp"

namespace eepn {

void PhaseTrace::validate() const {
    if (!(sample_rate > 0.0) || !std::isfinite(sample_rate)) {
        throw InvalidArgument("trace sample rate must be positive and finite");
    }
    for (std::size_t i = 0; i < phases.size(); ++i) {
        if (!std::isfinite(phases[i])) {
            throw InvalidArgument("non-finite phase at index " + std::to_string(i));
        }
    }
}

double beta2l_from_dispersion(double dl_ps_per_nm, double wavelength_nm) {
    const double dl = dl_ps_per_nm * 1e-3;  // ps/nm -> s/m
    const double lambda = wavelength_nm * 1e-9;
    return -dl * lambda * lambda / (2.0 * std::numbers::pi * speed_of_light);
}

double dispersion_from_beta2l(double beta2l_s2, double wavelength_nm) {
    const double lambda = wavelength_nm * 1e-9;
    return -beta2l_s2 * 2.0 * std::numbers::pi * speed_of_light / (lambda * lambda) * 1e3;
}

LinkParams LinkParams::from_dispersion(double symbol_rate, double dl_ps_per_nm, double wavelength_nm) {
    if (!(wavelength_nm > 0.0)) {
        throw InvalidArgument("wavelength must be positive");
    }
    LinkParams p;
    p.symbol_rate = symbol_rate;
    p.beta2_l = beta2l_from_dispersion(dl_ps_per_nm, wavelength_nm);
    return p;
}

void LinkParams::validate() const {
    if (!(symbol_rate > 0.0) || !std::isfinite(symbol_rate)) {
        throw InvalidArgument("symbol rate must be positive");
    }
    if (!std::isfinite(beta2_l)) {
        throw InvalidArgument("beta2*L must be finite");
    }
    if (!(lo_linewidth >= 0.0) || !(tx_linewidth >= 0.0)) {
        throw InvalidArgument("linewidths must be non-negative");
    }
}

PhaseTrace wiener_phase(double linewidth, std::size_t n, double rate, std::uint64_t seed) {
    if (!(linewidth >= 0.0) || !std::isfinite(linewidth)) {
        throw InvalidArgument("linewidth must be non-negative");
    }
    if (n == 0) {
        throw InvalidArgument("trace length must be at least 1");
    }
    if (!(rate > 0.0)) {
        throw InvalidArgument("rate must be positive");
    }
    PhaseTrace out;
    out.sample_rate = rate;
    out.phases.assign(n, 0.0);
    if (linewidth == 0.0) {
        return out;
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> step(0.0, std::sqrt(2.0 * std::numbers::pi * linewidth / rate));
    for (std::size_t i = 1; i < n; ++i) {
        out.phases[i] = out.phases[i - 1] + step(rng);
    }
    return out;
}

namespace {

constexpr std::string_view rate_key = "# sample_rate_hz=";

double parse_double(std::string_view text, std::size_t line_no) {
    while (!text.empty() && (text.back() == '\r' || text.back() == ' ' || text.back() == '\t')) {
        text.remove_suffix(1);
    }
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) {
        text.remove_prefix(1);
    }
    if (!text.empty() && text.front() == '+') {
        text.remove_prefix(1);
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        throw FormatError("cannot parse number '" + std::string(text) + "'", line_no);
    }
    if (!std::isfinite(value)) {
        throw FormatError("non-finite value", line_no);
    }
    return value;
}

}  // namespace

PhaseTrace read_phase_trace(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw FormatError("empty trace file", 0);
    }
    if (!line.starts_with(rate_key)) {
        throw FormatError("missing '# sample_rate_hz=' header", 1);
    }
    PhaseTrace trace;
    trace.sample_rate = parse_double(std::string_view(line).substr(rate_key.size()), 1);
    if (!(trace.sample_rate > 0.0)) {
        throw FormatError("sample rate must be positive", 1);
    }
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        trace.phases.push_back(parse_double(line, line_no));
    }
    if (trace.phases.empty()) {
        throw FormatError("trace contains no samples", 0);
    }
    return trace;
}

void write_phase_trace(std::ostream& out, const PhaseTrace& trace) {
    char buf[64];
    auto emit = [&](double v) {
        const auto res = std::to_chars(buf, buf + sizeof buf, v);
        out.write(buf, res.ptr - buf);
        out.put('\n');
    };
    out << rate_key;
    emit(trace.sample_rate);
    for (double v : trace.phases) {
        emit(v);
    }
}

PhaseTrace load_phase_trace(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open trace file " + path.string());
    }
    return read_phase_trace(in);
}

void save_phase_trace(const std::filesystem::path& path, const PhaseTrace& trace) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write trace file " + path.string());
    }
    write_phase_trace(out, trace);
    if (!out) {
        throw IoError("write failed for " + path.string());
    }
}

PhaseTrace detrend_poly(const PhaseTrace& trace, int degree) {
    trace.validate();
    if (degree < 0) {
        throw InvalidArgument("polynomial degree must be non-negative");
    }
    const std::size_t n = trace.size();
    if (n < 2) {
        throw NumericError("time axis is constant; polynomial fit is rank deficient");
    }
    const auto terms = static_cast<std::size_t>(degree) + 1;
    if (n <= terms) {
        throw InvalidArgument("trace of length " + std::to_string(n) + " too short for degree " +
                              std::to_string(degree));
    }

    // Legendre basis on [-1, 1] keeps the normal equations well conditioned at degree 5.
    Eigen::MatrixXd basis(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(terms));
    for (std::size_t i = 0; i < n; ++i) {
        const double t = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(n - 1);
        const auto row = static_cast<Eigen::Index>(i);
        basis(row, 0) = 1.0;
        if (terms > 1) {
            basis(row, 1) = t;
        }
        for (std::size_t k = 1; k + 1 < terms; ++k) {
            const auto kk = static_cast<double>(k);
            const auto col = static_cast<Eigen::Index>(k);
            basis(row, col + 1) = ((2.0 * kk + 1.0) * t * basis(row, col) - kk * basis(row, col - 1)) / (kk + 1.0);
        }
    }
    const Eigen::Map<const Eigen::VectorXd> y(trace.phases.data(), static_cast<Eigen::Index>(n));
    const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(basis);
    if (qr.rank() < static_cast<Eigen::Index>(terms)) {
        throw NumericError("polynomial fit is rank deficient");
    }
    const Eigen::VectorXd coeffs = qr.solve(y);
    const Eigen::VectorXd residual = y - basis * coeffs;

    PhaseTrace out;
    out.sample_rate = trace.sample_rate;
    out.phases.assign(residual.data(), residual.data() + residual.size());
    return out;
}

PhaseTrace resample_phase(const PhaseTrace& trace, double target_rate) {
    trace.validate();
    if (!(target_rate > 0.0) || !std::isfinite(target_rate)) {
        throw InvalidArgument("target rate must be positive");
    }
    if (trace.phases.empty()) {
        throw InvalidArgument("cannot resample an empty trace");
    }
    if (target_rate == trace.sample_rate) {
        return trace;
    }
    const std::size_t n = trace.size();
    const double step = trace.sample_rate / target_rate;  // input samples per output sample
    const auto n_out = static_cast<std::size_t>(std::floor(static_cast<double>(n - 1) / step + 1e-9)) + 1;

    PhaseTrace out;
    out.sample_rate = target_rate;
    out.phases.resize(n_out);
    for (std::size_t i = 0; i < n_out; ++i) {
        const double pos = static_cast<double>(i) * step;
        const auto j = static_cast<std::size_t>(pos);
        if (j + 1 >= n) {
            out.phases[i] = trace.phases[n - 1];
            continue;
        }
        const double frac = pos - static_cast<double>(j);
        out.phases[i] = trace.phases[j] + frac * (trace.phases[j + 1] - trace.phases[j]);
    }
    return out;
}

namespace detail {

ComplexSignal quadratic_allpass(const ComplexSignal& signal, double beta2_l, double sign) {
    signal.validate();
    if (beta2_l == 0.0) {
        return signal;
    }
    const std::size_t n = signal.size();
    ComplexSignal out = signal;
    detail::fft_inplace(out.samples, detail::FftDirection::forward);
    const double k = sign * 2.0 * std::numbers::pi * std::numbers::pi * beta2_l;
    const double scale = 1.0 / static_cast<double>(n);
    for (std::size_t b = 0; b < n; ++b) {
        const double f = detail::bin_frequency(b, n, signal.sample_rate);
        out.samples[b] *= std::polar(scale, k * f * f);
    }
    detail::fft_inplace(out.samples, detail::FftDirection::inverse);
    return out;
}

}  // namespace detail

ComplexSignal apply_cd(const ComplexSignal& signal, double beta2_l) {
    return detail::quadratic_allpass(signal, beta2_l, +1.0);
}

ComplexSignal apply_phase(const ComplexSignal& signal, const PhaseTrace& trace) {
    signal.validate();
    trace.validate();
    if (trace.size() != signal.size()) {
        throw InvalidArgument("phase trace length " + std::to_string(trace.size()) + " differs from signal length " +
                              std::to_string(signal.size()));
    }
    if (std::abs(trace.sample_rate - signal.sample_rate) > 1e-9 * signal.sample_rate) {
        throw InvalidArgument("phase trace rate differs from signal rate; resample first");
    }
    ComplexSignal out = signal;
    for (std::size_t i = 0; i < out.size(); ++i) {
        out.samples[i] *= std::polar(1.0, trace.phases[i]);
    }
    return out;
}

ComplexSignal add_awgn(const ComplexSignal& signal, double snr_db, std::uint64_t seed) {
    signal.validate();
    if (std::isnan(snr_db) || snr_db == -std::numeric_limits<double>::infinity()) {
        throw InvalidArgument("SNR must be finite or +inf");
    }
    if (snr_db == std::numeric_limits<double>::infinity()) {
        return signal;
    }
    const double variance = signal.mean_power() / std::pow(10.0, snr_db / 10.0);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> component(0.0, std::sqrt(variance / 2.0));
    ComplexSignal out = signal;
    for (auto& s : out.samples) {
        const double re = component(rng);
        const double im = component(rng);
        s += cplx(re, im);
    }
    return out;
}

}  // namespace eepn
