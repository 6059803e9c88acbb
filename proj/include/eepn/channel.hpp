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
#include <vector>

#include "eepn/signal.hpp"

namespace eepn {

/// Unwrapped phase samples (rad) at a fixed sample rate (Hz).
struct PhaseTrace {
    std::vector<double> phases;
    double sample_rate = 0.0;

    std::size_t size() const noexcept { return phases.size(); }
    void validate() const;
};

inline constexpr double speed_of_light = 299'792'458.0;

/// Accumulated dispersion beta2*L (s^2) from D*L (ps/nm) at carrier wavelength lambda (nm):
/// beta2*L = -D*L * lambda^2 / (2 pi c).
double beta2l_from_dispersion(double dl_ps_per_nm, double wavelength_nm);
/// Inverse of beta2l_from_dispersion.
double dispersion_from_beta2l(double beta2l_s2, double wavelength_nm);

/// Physical link constants. Derived CD memory quantities live in models.hpp.
struct LinkParams {
    double symbol_rate = 130e9;      // Bd
    double beta2_l = 0.0;            // s^2, signed
    double lo_linewidth = 0.0;       // Hz
    double tx_linewidth = 0.0;       // Hz
    double awgn_snr_db = 0.0;        // dB, +inf disables the noise source

    /// The carrier wavelength is not part of the link record; 1550 nm is the usual C-band choice.
    static LinkParams from_dispersion(double symbol_rate, double dl_ps_per_nm, double wavelength_nm = 1550.0);
    void validate() const;
};

/// Wiener phase: phi_0 = 0, increments ~ N(0, 2 pi linewidth / rate).
PhaseTrace wiener_phase(double linewidth, std::size_t n, double rate, std::uint64_t seed);

/// Text trace format: line 1 `# sample_rate_hz=<float>`, then one phase value per line.
PhaseTrace read_phase_trace(std::istream& in);
void write_phase_trace(std::ostream& out, const PhaseTrace& trace);
PhaseTrace load_phase_trace(const std::filesystem::path& path);
void save_phase_trace(const std::filesystem::path& path, const PhaseTrace& trace);

/// Subtracts the least-squares polynomial of `degree` fitted on a time axis mapped to [-1, 1].
PhaseTrace detrend_poly(const PhaseTrace& trace, int degree = 5);

/// Linear interpolation onto a grid of spacing 1/target_rate starting at the first sample.
/// The output spans the input duration; positions beyond the last sample clamp to it.
PhaseTrace resample_phase(const PhaseTrace& trace, double target_rate);

/// All-pass CD filter exp(+j 2 pi^2 beta2L f^2) applied over the full signal length.
ComplexSignal apply_cd(const ComplexSignal& signal, double beta2_l);

/// Samplewise rotation by exp(j phi). The trace must match the signal in rate and length.
ComplexSignal apply_phase(const ComplexSignal& signal, const PhaseTrace& trace);

/// Adds circular complex Gaussian noise of variance mean_power / 10^(snr_db/10).
/// snr_db = +inf returns the input unchanged.
ComplexSignal add_awgn(const ComplexSignal& signal, double snr_db, std::uint64_t seed);

}  // namespace eepn
