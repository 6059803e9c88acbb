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

#include "eepn/experiment.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include "eepn/error.hpp"

namespace eepn {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

double to_double(const std::string& key, std::string_view v) {
    if (v == "inf" || v == "+inf") {
        return std::numeric_limits<double>::infinity();
    }
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size() || !std::isfinite(out)) {
        throw ConfigError(key, "expected a number, got '" + std::string(v) + "'");
    }
    return out;
}

std::uint64_t to_uint(const std::string& key, std::string_view v) {
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size()) {
        // Allow integral values written in floating notation, e.g. 2.097152e6.
        const double d = to_double(key, v);
        if (d < 0.0 || d != std::floor(d) || d > 1.8e19) {
            throw ConfigError(key, "expected a non-negative integer, got '" + std::string(v) + "'");
        }
        return static_cast<std::uint64_t>(d);
    }
    return out;
}

std::string fmt(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

}  // namespace

void ExperimentConfig::validate() const {
    if (!(symbol_rate_bd > 0.0)) {
        throw ConfigError("symbol_rate_bd", "must be positive");
    }
    if (qam_order != 4 && qam_order != 16 && qam_order != 64) {
        throw ConfigError("qam_order", "must be 4, 16 or 64");
    }
    if (n_symbols == 0) {
        throw ConfigError("n_symbols", "must be at least 1");
    }
    if (oversampling < 2 || oversampling > 64) {
        throw ConfigError("oversampling", "must lie in [2, 64]");
    }
    if (!(rrc_rolloff >= 0.0 && rrc_rolloff <= 1.0)) {
        throw ConfigError("rrc_rolloff", "must lie in [0, 1]");
    }
    if (rrc_span < 8) {
        throw ConfigError("rrc_span", "must be at least 8 symbols");
    }
    if (dl_ps_per_nm && beta2l_ps2) {
        throw ConfigError("beta2l_ps2", "give either dl_ps_per_nm or beta2l_ps2, not both");
    }
    if (!dl_ps_per_nm && !beta2l_ps2) {
        throw ConfigError("dl_ps_per_nm", "dispersion is not set");
    }
    if (!(wavelength_nm > 0.0)) {
        throw ConfigError("wavelength_nm", "must be positive");
    }
    if (!(lo_linewidth_hz >= 0.0)) {
        throw ConfigError("lo_linewidth_hz", "must be non-negative");
    }
    if (!(tx_linewidth_hz >= 0.0)) {
        throw ConfigError("tx_linewidth_hz", "must be non-negative");
    }
    if (std::isnan(snr_db) || snr_db == -std::numeric_limits<double>::infinity()) {
        throw ConfigError("snr_db", "must be finite or inf");
    }
    if (cpr_window == 0 || cpr_window % 2 == 0) {
        throw ConfigError("cpr_window", "must be odd and at least 1");
    }
    if (block_m == 0) {
        throw ConfigError("block_m", "must be at least 1");
    }
}

LinkParams ExperimentConfig::link() const {
    LinkParams p = dl_ps_per_nm ? LinkParams::from_dispersion(symbol_rate_bd, *dl_ps_per_nm, wavelength_nm)
                                : LinkParams{};
    p.symbol_rate = symbol_rate_bd;
    if (beta2l_ps2) {
        p.beta2_l = *beta2l_ps2 * 1e-24;
    }
    p.lo_linewidth = lo_linewidth_hz;
    p.tx_linewidth = tx_linewidth_hz;
    p.awgn_snr_db = snr_db;
    return p;
}

CdMemory ExperimentConfig::memory() const {
    return cd_memory(link(), n_cd_mode);
}

std::size_t ExperimentConfig::guard_symbols() const {
    // The oversampled window is never shorter than the physical memory, so covering the
    // model window also covers the circular wrap of the CD filters.
    const std::size_t window = std::max(memory().n_cd, cd_memory(link()).n_cd) + 1;
    return static_cast<std::size_t>(rrc_span) + (window + 1) / 2 + cpr_window / 2;
}

ExperimentConfig parse_config(std::string_view text) {
    ExperimentConfig c;
    std::map<std::string, std::string> seen;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(line_no), "expected 'key = value'");
        }
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));
        if (!seen.emplace(key, std::string(value)).second) {
            throw ConfigError(key, "given more than once");
        }

        if (key == "symbol_rate_bd") {
            c.symbol_rate_bd = to_double(key, value);
        } else if (key == "qam_order") {
            c.qam_order = static_cast<int>(to_uint(key, value));
        } else if (key == "n_symbols") {
            c.n_symbols = static_cast<std::size_t>(to_uint(key, value));
        } else if (key == "oversampling") {
            c.oversampling = static_cast<int>(to_uint(key, value));
        } else if (key == "rrc_rolloff") {
            c.rrc_rolloff = to_double(key, value);
        } else if (key == "rrc_span") {
            c.rrc_span = static_cast<int>(to_uint(key, value));
        } else if (key == "dl_ps_per_nm") {
            c.dl_ps_per_nm = to_double(key, value);
        } else if (key == "beta2l_ps2") {
            c.beta2l_ps2 = to_double(key, value);
        } else if (key == "wavelength_nm") {
            c.wavelength_nm = to_double(key, value);
        } else if (key == "lo_linewidth_hz") {
            c.lo_linewidth_hz = to_double(key, value);
        } else if (key == "tx_linewidth_hz") {
            c.tx_linewidth_hz = to_double(key, value);
        } else if (key == "snr_db") {
            c.snr_db = to_double(key, value);
        } else if (key == "cpr_window") {
            c.cpr_window = static_cast<std::size_t>(to_uint(key, value));
        } else if (key == "block_m") {
            c.block_m = static_cast<std::size_t>(to_uint(key, value));
        } else if (key == "n_cd_mode") {
            if (value == "formula") {
                c.n_cd_mode = NcdMode::formula;
            } else if (value == "oversampled") {
                c.n_cd_mode = NcdMode::oversampled;
            } else {
                throw ConfigError(key, "expected 'formula' or 'oversampled'");
            }
        } else if (key == "seed") {
            c.seed = to_uint(key, value);
        } else {
            throw ConfigError(key, "unknown key");
        }
    }
    // The built-in D*L default yields to an explicit beta2*L.
    if (seen.contains("beta2l_ps2") && !seen.contains("dl_ps_per_nm")) {
        c.dl_ps_per_nm.reset();
    }
    c.validate();
    return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open config file " + path.string());
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string format_config(const ExperimentConfig& c) {
    std::ostringstream out;
    out << "symbol_rate_bd = " << fmt(c.symbol_rate_bd) << '\n'
        << "qam_order = " << c.qam_order << '\n'
        << "n_symbols = " << c.n_symbols << '\n'
        << "oversampling = " << c.oversampling << '\n'
        << "rrc_rolloff = " << fmt(c.rrc_rolloff) << '\n'
        << "rrc_span = " << c.rrc_span << '\n';
    if (c.dl_ps_per_nm) {
        out << "dl_ps_per_nm = " << fmt(*c.dl_ps_per_nm) << '\n';
    }
    if (c.beta2l_ps2) {
        out << "beta2l_ps2 = " << fmt(*c.beta2l_ps2) << '\n';
    }
    out << "wavelength_nm = " << fmt(c.wavelength_nm) << '\n'
        << "lo_linewidth_hz = " << fmt(c.lo_linewidth_hz) << '\n'
        << "tx_linewidth_hz = " << fmt(c.tx_linewidth_hz) << '\n'
        << "snr_db = " << fmt(c.snr_db) << '\n'
        << "cpr_window = " << c.cpr_window << '\n'
        << "block_m = " << c.block_m << '\n'
        << "n_cd_mode = " << (c.n_cd_mode == NcdMode::oversampled ? "oversampled" : "formula") << '\n'
        << "seed = " << c.seed << '\n';
    return out.str();
}

SubSeeds SubSeeds::derive(std::uint64_t master) {
    constexpr std::uint64_t golden = 0x9E3779B97F4A7C15ull;
    return SubSeeds{
        splitmix64(master + 1 * golden), splitmix64(master + 2 * golden), splitmix64(master + 3 * golden),
        splitmix64(master + 4 * golden), splitmix64(master + 5 * golden),
    };
}

SimulationRun run_simulation(const ExperimentConfig& config) {
    config.validate();
    SimulationRun run;
    run.config = config;
    run.seeds = SubSeeds::derive(config.seed);
    run.memory = config.memory();
    run.grid = BlockGrid::make(config.n_symbols, config.block_m, config.guard_symbols());

    const LinkParams link = config.link();
    const int os = config.oversampling;
    const double dsp_rate = config.symbol_rate_bd * os;

    run.tx_symbols = generate_qam(config.qam_order, config.n_symbols, run.seeds.symbols, config.symbol_rate_bd);
    ComplexSignal wave = rrc_shape(run.tx_symbols, os, config.rrc_rolloff, config.rrc_span);
    if (config.tx_linewidth_hz > 0.0) {
        wave = apply_phase(wave, wiener_phase(config.tx_linewidth_hz, wave.size(), dsp_rate, run.seeds.tx_phase));
    }
    wave = apply_cd(wave, link.beta2_l);
    run.lo_phase = wiener_phase(config.lo_linewidth_hz, wave.size(), dsp_rate, run.seeds.lo_phase);
    wave = apply_phase(wave, run.lo_phase);
    // The configured SNR refers to the matched-filter output: the unit-energy RRC keeps
    // only 1/oversampling of the white noise spread over the full sample band.
    wave = add_awgn(wave, config.snr_db - 10.0 * std::log10(static_cast<double>(os)), run.seeds.awgn);
    wave = apply_cdc(wave, link.beta2_l);
    ComplexSignal rx = matched_downsample(wave, os, config.rrc_rolloff, config.rrc_span);
    run.rx_symbols = cpr_idr(rx, run.tx_symbols, config.cpr_window).corrected;
    run.metrics = block_metrics(run.rx_symbols, run.tx_symbols, run.grid);
    return run;
}

namespace {

void ensure_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
    }
}

}  // namespace

void write_simulation_artifacts(const SimulationRun& run, const std::filesystem::path& out_dir) {
    ensure_dir(out_dir);
    save_series_csv(out_dir / "measured_sigma2.csv", run.metrics.distortion);
    BlockSeries snr_db = run.metrics.snr;
    for (auto& v : snr_db.values) {
        v = 10.0 * std::log10(v);
    }
    save_series_csv(out_dir / "measured_snr.csv", snr_db);
    save_phase_trace(out_dir / "phase_trace.txt", run.lo_phase);

    std::ofstream m(out_dir / "run_manifest.txt", std::ios::binary);
    if (!m) {
        throw IoError("cannot write run manifest in " + out_dir.string());
    }
    const auto cd = cd_memory(run.config.link());
    m << "# eepn-lab run manifest\n"
      << "library_version = " << library_version << '\n'
      << format_config(run.config) << "seed_symbols = " << run.seeds.symbols << '\n'
      << "seed_tx_phase = " << run.seeds.tx_phase << '\n'
      << "seed_lo_phase = " << run.seeds.lo_phase << '\n'
      << "seed_awgn = " << run.seeds.awgn << '\n'
      << "seed_sota = " << run.seeds.sota << '\n'
      << "beta2l_s2 = " << fmt(run.config.link().beta2_l) << '\n'
      << "tau_cd_s = " << fmt(cd.tau_cd) << '\n'
      << "n_cd_formula = " << cd.n_cd << '\n'
      << "n_cd_window = " << run.memory.n_cd + 1 << '\n'
      << "guard_symbols = " << run.config.guard_symbols() << '\n'
      << "block_first = " << run.grid.first << '\n'
      << "n_blocks = " << run.grid.count << '\n';
    if (!m) {
        throw IoError("write failed for run manifest");
    }
}

Prediction run_prediction(const ExperimentConfig& config, const PhaseTrace& trace) {
    config.validate();
    trace.validate();
    const PhaseTrace at_symbol_rate = resample_phase(trace, config.symbol_rate_bd);
    const CdMemory memory = config.memory();
    if (at_symbol_rate.size() < memory.n_cd + 1) {
        throw InvalidArgument("trace of " + std::to_string(at_symbol_rate.size()) +
                              " symbols is shorter than one CD window (" + std::to_string(memory.n_cd + 1) + ")");
    }
    Prediction p;
    p.grid = BlockGrid::make(at_symbol_rate.size(), config.block_m, config.guard_symbols());
    p.temporal = temporal_gn_predict(at_symbol_rate, memory.n_cd, p.grid);
    p.fdpe = fdpe_distortion(at_symbol_rate, config.link(), p.grid);
    p.sota_sigma2 = p.temporal.mean();
    p.sota = sota_gn_predict(p.sota_sigma2, p.grid, SubSeeds::derive(config.seed).sota);
    return p;
}

void write_prediction_artifacts(const Prediction& prediction, const std::filesystem::path& out_dir) {
    ensure_dir(out_dir);
    save_series_csv(out_dir / "temporal_gn.csv", prediction.temporal);
    save_series_csv(out_dir / "fdpe_distortion.csv", prediction.fdpe);
    save_series_csv(out_dir / "sota_gn.csv", prediction.sota);
}

CompareReport compare_series(const BlockSeries& a, const BlockSeries& b, std::size_t n_bins) {
    CompareReport r;
    r.correlation = pearson(a, b);
    r.mean_a = a.mean();
    r.mean_b = b.mean();
    r.n_blocks = a.size();
    auto positive = [](const BlockSeries& s) {
        for (double v : s.values) {
            if (!(v > 0.0)) {
                return false;
            }
        }
        return true;
    };
    r.hist_a = histogram(a, n_bins, positive(a));
    r.hist_b = histogram(b, n_bins, positive(b));
    return r;
}

void write_compare_report(std::ostream& out, const CompareReport& report) {
    out << "rho=" << fmt(report.correlation.rho) << '\n'
        << "rho_defined=" << (report.correlation.defined ? "true" : "false") << '\n'
        << "mean_a=" << fmt(report.mean_a) << '\n'
        << "mean_b=" << fmt(report.mean_b) << '\n'
        << "n_blocks=" << report.n_blocks << '\n';
}

void write_compare_artifacts(const CompareReport& report, const std::filesystem::path& out_dir) {
    ensure_dir(out_dir);
    std::ofstream rep(out_dir / "report.txt", std::ios::binary);
    write_compare_report(rep, report);
    std::ofstream ha(out_dir / "hist_a.csv", std::ios::binary);
    write_histogram_csv(ha, report.hist_a);
    std::ofstream hb(out_dir / "hist_b.csv", std::ios::binary);
    write_histogram_csv(hb, report.hist_b);
    if (!rep || !ha || !hb) {
        throw IoError("cannot write comparison outputs in " + out_dir.string());
    }
}

PhaseTrace prep_trace(const PhaseTrace& raw, int degree, double target_rate) {
    return resample_phase(detrend_poly(raw, degree), target_rate);
}

}  // namespace eepn
