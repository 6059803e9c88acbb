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
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eepn/analysis.hpp"
#include "eepn/channel.hpp"
#include "eepn/models.hpp"
#include "eepn/rx_dsp.hpp"
#include "eepn/signal.hpp"

namespace eepn {

inline constexpr const char* library_version = "0.1.0";

/// Run configuration. Parsed from `key = value` lines; `#` starts a comment.
/// Defaults reproduce the 130 GBd, 18 ns/nm, 210 kHz LO link.
struct ExperimentConfig {
    double symbol_rate_bd = 130e9;
    int qam_order = 16;
    std::size_t n_symbols = std::size_t{1} << 21;
    int oversampling = default_oversampling;
    double rrc_rolloff = default_rrc_rolloff;
    int rrc_span = default_rrc_span;
    std::optional<double> dl_ps_per_nm = 18000.0;
    std::optional<double> beta2l_ps2;
    double wavelength_nm = 1550.0;
    double lo_linewidth_hz = 210e3;
    double tx_linewidth_hz = 0.0;
    double snr_db = 17.0;
    std::size_t cpr_window = default_cpr_window;
    std::size_t block_m = 500;
    NcdMode n_cd_mode = NcdMode::formula;
    std::uint64_t seed = 1;

    /// Throws ConfigError naming the first offending field.
    void validate() const;
    LinkParams link() const;
    /// CD memory window used by the temporal model (per n_cd_mode).
    CdMemory memory() const;
    /// Symbols excluded at each end of the sequence before blocking.
    std::size_t guard_symbols() const;
};

ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);
/// Canonical `key = value` rendering; parse_config(format_config(c)) reproduces c.
std::string format_config(const ExperimentConfig& config);

/// Per-stage seeds derived from the master seed with splitmix64(master + k * golden),
/// k = 1 (symbols), 2 (Tx laser), 3 (LO), 4 (AWGN), 5 (SotA draws).
struct SubSeeds {
    std::uint64_t symbols;
    std::uint64_t tx_phase;
    std::uint64_t lo_phase;
    std::uint64_t awgn;
    std::uint64_t sota;

    static SubSeeds derive(std::uint64_t master);
};

struct SimulationRun {
    ExperimentConfig config;
    SubSeeds seeds{};
    CdMemory memory;
    ComplexSignal tx_symbols;
    ComplexSignal rx_symbols;  // after CDC, matched filter and CPR
    PhaseTrace lo_phase;       // at the DSP sample rate
    BlockGrid grid;
    BlockMetrics metrics;
};

/// Tx -> [Tx laser] -> CD -> LO phase -> AWGN -> CDC -> matched filter -> CPR -> blocks.
SimulationRun run_simulation(const ExperimentConfig& config);
/// Writes measured_sigma2.csv, measured_snr.csv, phase_trace.txt and run_manifest.txt.
void write_simulation_artifacts(const SimulationRun& run, const std::filesystem::path& out_dir);

struct Prediction {
    BlockGrid grid;
    BlockSeries temporal;
    BlockSeries fdpe;
    BlockSeries sota;
    double sota_sigma2 = 0.0;
};

/// Evaluates the temporal, FDPE and constant-variance models on an LO phase trace. The
/// trace is resampled to the symbol rate and blocked with the simulation's rule.
Prediction run_prediction(const ExperimentConfig& config, const PhaseTrace& trace);
/// Writes temporal_gn.csv, fdpe_distortion.csv and sota_gn.csv.
void write_prediction_artifacts(const Prediction& prediction, const std::filesystem::path& out_dir);

struct CompareReport {
    Correlation correlation;
    double mean_a = 0.0;
    double mean_b = 0.0;
    std::size_t n_blocks = 0;
    std::vector<HistogramBin> hist_a;
    std::vector<HistogramBin> hist_b;
};

CompareReport compare_series(const BlockSeries& a, const BlockSeries& b, std::size_t n_bins = 50);
/// key=value lines: rho, rho_defined, mean_a, mean_b, n_blocks.
void write_compare_report(std::ostream& out, const CompareReport& report);
/// Report plus hist_a.csv / hist_b.csv in out_dir.
void write_compare_artifacts(const CompareReport& report, const std::filesystem::path& out_dir);

/// Polynomial frequency-offset removal followed by resampling.
PhaseTrace prep_trace(const PhaseTrace& raw, int degree, double target_rate);

}  // namespace eepn
