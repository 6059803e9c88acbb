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

// eepn-lab command line front end. Talks to libeepn through its C interface only.

#include <CLI11.hpp>

#include <cstdio>
#include <memory>
#include <string>

#include "eepn/eepn.h"

namespace {

int report(eepn_status status) {
    if (status == EEPN_OK) {
        return 0;
    }
    std::fprintf(stderr, "eepn-lab: %s: %s\n", eepn_status_name(status), eepn_last_error());
    return static_cast<int>(status);
}

using ConfigPtr = std::unique_ptr<eepn_config, decltype(&eepn_config_free)>;

}  // namespace

constexpr int usage_exit_code = 64;

int main(int argc, char** argv) {
    CLI::App app{"Equalization-enhanced phase noise simulator and temporal GN model"};
    app.set_version_flag("--version", std::string(eepn_version()));
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::string trace_path;
    std::string series_a;
    std::string series_b;
    int degree = 5;
    double rate = 0.0;

    auto* simulate = app.add_subcommand("simulate", "Run the transmission chain and measure blockwise distortion");
    simulate->add_option("--config", config_path, "Run configuration (key = value)")->required();
    simulate->add_option("--out", out_path, "Output directory")->required();

    auto* predict = app.add_subcommand("predict", "Evaluate the temporal GN, FDPE and constant-variance models");
    predict->add_option("--config", config_path, "Run configuration (key = value)")->required();
    predict->add_option("--trace", trace_path, "LO phase trace")->required();
    predict->add_option("--out", out_path, "Output directory")->required();

    auto* compare = app.add_subcommand("compare", "Correlate two block series and write their histograms");
    compare->add_option("series_a", series_a, "First CSV series")->required();
    compare->add_option("series_b", series_b, "Second CSV series")->required();
    compare->add_option("--out", out_path, "Directory for report.txt and histograms");

    auto* prep = app.add_subcommand("prep-trace", "Remove the polynomial frequency drift and resample a trace");
    prep->add_option("--trace", trace_path, "Raw phase trace")->required();
    prep->add_option("--degree", degree, "Polynomial degree")->check(CLI::NonNegativeNumber);
    prep->add_option("--rate", rate, "Target sample rate in Hz")->required();
    prep->add_option("--out", out_path, "Output trace file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::fprintf(stderr, "eepn-lab: usage-error: %s\n", e.what());
        return usage_exit_code;
    }

    auto load_config = [&](ConfigPtr& cfg) {
        eepn_config* raw = nullptr;
        const eepn_status s = eepn_config_load(config_path.c_str(), &raw);
        cfg.reset(raw);
        return s;
    };

    if (*simulate) {
        ConfigPtr cfg(nullptr, eepn_config_free);
        if (const auto s = load_config(cfg); s != EEPN_OK) {
            return report(s);
        }
        return report(eepn_simulate(cfg.get(), out_path.c_str()));
    }
    if (*predict) {
        ConfigPtr cfg(nullptr, eepn_config_free);
        if (const auto s = load_config(cfg); s != EEPN_OK) {
            return report(s);
        }
        return report(eepn_predict(cfg.get(), trace_path.c_str(), out_path.c_str()));
    }
    if (*compare) {
        eepn_compare_result result{};
        const char* dir = out_path.empty() ? nullptr : out_path.c_str();
        if (const auto s = eepn_compare(series_a.c_str(), series_b.c_str(), dir, &result); s != EEPN_OK) {
            return report(s);
        }
        char text[512];
        if (const auto s = eepn_format_compare_report(&result, text, sizeof text, nullptr); s != EEPN_OK) {
            return report(s);
        }
        std::fputs(text, stdout);
        return 0;
    }
    return report(eepn_prep_trace(trace_path.c_str(), degree, rate, out_path.c_str()));
}
