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

// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "eepn/experiment.hpp"
#include "oracles.hpp"

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
    std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
    std::fflush(stdout);
    failures += ok ? 0 : 1;
}

std::string fmt(const char* pattern, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, pattern, args...);
    return buf;
}

double tail_ratio(const eepn::BlockSeries& s) {
    return eepn::quantile(s.values, 0.999) / eepn::quantile(s.values, 0.5);
}

double relative_error(const std::vector<eepn::cplx>& got, const std::vector<eepn::cplx>& want) {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < want.size(); ++i) {
        num += std::norm(got[i] - want[i]);
        den += std::norm(want[i]);
    }
    return std::sqrt(num / den);
}

}  // namespace

int main() {
    using clock = std::chrono::steady_clock;
    const auto t0 = clock::now();

    // Reference link: 130 GBd 16-QAM, D*L = 18 ns/nm, 210 kHz LO, 17 dB AWGN, M = 500.
    const eepn::ExperimentConfig config = eepn::parse_config("n_symbols = 2097152\nseed = 1\n");
    const auto run = eepn::run_simulation(config);
    const auto pred = eepn::run_prediction(config, run.lo_phase);
    const auto& measured = run.metrics.distortion;
    const double sim_seconds = std::chrono::duration<double>(clock::now() - t0).count();

    {
        const auto temporal = eepn::pearson(measured, pred.temporal);
        const auto constant = eepn::pearson(measured, eepn::sota_gn_predict(pred.sota_sigma2, pred.grid));
        const auto seeded = eepn::pearson(measured, pred.sota);
        const bool ok = temporal.defined && temporal.rho >= 0.85 && std::abs(constant.rho) <= 0.1 &&
                        std::abs(seeded.rho) <= 0.1 && sim_seconds < 300.0;
        report(1, ok,
               fmt("rho(measured, temporal GN) = %.4f (>= 0.85); rho vs constant baseline = %.4f (defined=%d), "
                   "vs seeded baseline = %.4f (|rho| <= 0.1); N_CD = %zu, %zu blocks, %.1f s",
                   temporal.rho, constant.rho, constant.defined ? 1 : 0, seeded.rho, run.memory.n_cd,
                   measured.size(), sim_seconds));
    }

    {
        const auto rho = eepn::pearson(measured, pred.fdpe);
        report(2, rho.defined && rho.rho >= 0.85, fmt("rho(measured, FDPE distortion) = %.4f (>= 0.85)", rho.rho));
    }

    {
        // Control: no LO phase noise, AWGN set so that the mean measured distortion matches.
        auto control_config = config;
        control_config.lo_linewidth_hz = 0.0;
        control_config.snr_db = -10.0 * std::log10(measured.mean());
        const auto control = eepn::run_simulation(control_config);
        const double r_eepn = tail_ratio(measured);
        const double r_ctrl = tail_ratio(control.metrics.distortion);
        const double snr_eepn = -10.0 * std::log10(measured.mean());
        const double snr_ctrl = -10.0 * std::log10(control.metrics.distortion.mean());
        report(3, r_eepn >= 2.0 * r_ctrl,
               fmt("q99.9/median of measured sigma^2: EEPN %.4f vs control %.4f, ratio %.3f (>= 2); mean SNR "
                   "%.2f dB vs %.2f dB",
                   r_eepn, r_ctrl, r_eepn / r_ctrl, snr_eepn, snr_ctrl));
    }

    {
        const double expected = 2.0 * std::numbers::pi * config.lo_linewidth_hz * run.memory.tau_cd / 6.0;
        // Brute-force expectation over independent Wiener windows with the naive oracle.
        const double step = 2.0 * std::numbers::pi * config.lo_linewidth_hz / config.symbol_rate_bd;
        double brute = 0.0;
        const int windows = 400;
        for (int s = 0; s < windows; ++s) {
            const auto w = oracle::random_walk(run.memory.n_cd + 1, std::sqrt(step), 0.0, 500 + s);
            brute += oracle::naive_moving_variance(w, run.memory.n_cd + 1)[0];
        }
        brute /= windows;
        double worst = 0.0;
        std::string levels;
        for (std::uint64_t seed : {101u, 102u, 103u}) {
            const auto trace = eepn::wiener_phase(config.lo_linewidth_hz, 2 * config.n_symbols,
                                                  2 * config.symbol_rate_bd, seed);
            const double mean = eepn::run_prediction(config, trace).temporal.mean();
            worst = std::max(worst, std::abs(mean / expected - 1.0));
            levels += fmt(" %.4g", mean);
        }
        const bool ok = worst <= 0.10 && std::abs(brute / expected - 1.0) <= 0.10;
        report(4, ok,
               fmt("mean temporal GN on Wiener traces:%s vs 2*pi*dnu*tau/6 = %.4g (worst %.1f%%); naive Monte "
                   "Carlo %.4g",
                   levels.c_str(), expected, 100.0 * worst, brute));
    }

    {
        const std::size_t windows[] = {2, 3, 65, 501, 2438};
        double worst = 0.0;
        int compared = 0;
        std::mt19937_64 rng(2024);
        std::uniform_real_distribution<double> offset(-100.0, 100.0);
        std::uniform_real_distribution<double> step(1e-4, 0.05);
        for (int t = 0; t < 100; ++t) {
            const auto x = oracle::random_walk(6000, step(rng), offset(rng), 9000 + t);
            for (std::size_t w : windows) {
                const auto fast = eepn::moving_variance(std::span<const double>(x), w);
                const auto slow = oracle::naive_moving_variance(x, w);
                for (std::size_t i = 0; i < slow.size(); ++i) {
                    const double err = std::abs(fast.values[i] - slow[i]) / slow[i];
                    worst = std::max(worst, err);
                }
                ++compared;
            }
        }
        report(5, worst <= 1e-12,
               fmt("streaming vs naive moving variance over %d trace/window pairs: max relative error %.2e "
                   "(<= 1e-12)",
                   compared, worst));
    }

    {
        const auto link = config.link();
        const auto symbols = eepn::generate_qam(16, 1 << 18, 3, config.symbol_rate_bd);
        const auto wave = eepn::rrc_shape(symbols, 2);
        const auto back = eepn::apply_cdc(eepn::apply_cd(wave, link.beta2_l), link.beta2_l);
        const double cd_err = relative_error(back.samples, wave.samples);

        double parseval = 0.0;
        for (std::size_t width : {64u, 501u, 4096u, 4875u}) {
            const std::size_t center = wave.size() / 3;
            const auto bins = eepn::windowed_dft(wave, center, width);
            double e_time = 0.0;
            for (std::size_t i = center - width / 2; i < center - width / 2 + width; ++i) {
                e_time += std::norm(wave.samples[i]);
            }
            double e_freq = 0.0;
            for (const auto& b : bins) {
                e_freq += std::norm(b);
            }
            parseval = std::max(parseval, std::abs(e_freq - e_time) / e_time);
        }

        const auto wiener = eepn::wiener_phase(210e3, 1'000'000, 260e9, 17);
        std::vector<double> inc(wiener.size() - 1);
        for (std::size_t i = 0; i + 1 < wiener.size(); ++i) {
            inc[i] = wiener.phases[i + 1] - wiener.phases[i];
        }
        const double inc_ratio = oracle::sample_variance(inc) / (2.0 * std::numbers::pi * 210e3 / 260e9);

        auto awgn_config = eepn::parse_config("n_symbols = 524288\nlo_linewidth_hz = 0\nsnr_db = 17\nseed = 8\n");
        const auto awgn = eepn::run_simulation(awgn_config);
        const double awgn_db = -10.0 * std::log10(awgn.metrics.distortion.mean());

        const bool ok = cd_err <= 1e-10 && parseval <= 1e-12 && std::abs(inc_ratio - 1.0) <= 0.05 &&
                        std::abs(awgn_db - 17.0) <= 0.1;
        report(6, ok,
               fmt("CD->CDC rel. error %.2e (<= 1e-10); Parseval %.2e (<= 1e-12); Wiener increment variance "
                   "ratio %.4f (1 +- 0.05); AWGN-only SNR %.3f dB for 17 dB (+- 0.1)",
                   cd_err, parseval, inc_ratio, awgn_db));
    }

    {
        std::ifstream readme(EEPN_README_PATH);
        std::stringstream ss;
        ss << readme.rdbuf();
        const bool documented = ss.str().find("## Out of scope") != std::string::npos;
        report(7, documented,
               "adaptive-DSP and hardware-trace rows are not reproducible here; README documents them under "
               "'Out of scope' and criterion 1 is the model-validation gate");
    }

    const double total = std::chrono::duration<double>(clock::now() - t0).count();
    std::printf("acceptance: %d failing criteria, %.1f s total\n", failures, total);
    return failures == 0 ? 0 : 1;
}
