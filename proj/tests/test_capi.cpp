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

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "eepn/eepn.h"

namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const char* f) const { return (path / f).string(); }
};

std::string last_error() { return eepn_last_error(); }

}  // namespace

TEST_CASE("version and status names") {
    CHECK(std::string(eepn_version()) == "0.1.0");
    CHECK(std::string(eepn_status_name(EEPN_OK)) == "ok");
    CHECK(std::string(eepn_status_name(EEPN_ERR_CONFIG)) == "config-error");
    CHECK(std::string(eepn_status_name(EEPN_ERR_FORMAT)) == "format-error");
    CHECK(std::strlen(eepn_status_name(static_cast<eepn_status>(12345))) > 0);
}

TEST_CASE("errors map to status codes") {
    eepn_config* cfg = nullptr;
    CHECK(eepn_config_parse("qam_order = 32\n", &cfg) == EEPN_ERR_CONFIG);
    CHECK(cfg == nullptr);
    CHECK(last_error().find("qam_order") != std::string::npos);

    CHECK(eepn_config_parse(nullptr, &cfg) == EEPN_ERR_INVALID_ARGUMENT);
    CHECK(eepn_config_parse("", nullptr) == EEPN_ERR_INVALID_ARGUMENT);
    CHECK(eepn_config_load("/nonexistent/x.cfg", &cfg) == EEPN_ERR_IO);

    TempDir d("eepn_test_capi_err");
    {
        std::ofstream bad(d / "bad.txt");
        bad << "# sample_rate_hz=1e9\n0.1\nnot-a-number\n";
    }
    eepn_trace* t = nullptr;
    CHECK(eepn_trace_load((d / "bad.txt").c_str(), &t) == EEPN_ERR_FORMAT);
    CHECK(last_error().find("line 3") != std::string::npos);

    const double two[] = {0.0, 1.0};
    CHECK(eepn_trace_create(two, 2, 1.0, &t) == EEPN_OK);
    eepn_series* s = nullptr;
    CHECK(eepn_moving_variance(t, 3, &s) == EEPN_ERR_INVALID_ARGUMENT);
    CHECK(s == nullptr);
    CHECK(eepn_trace_detrend(t, 5, nullptr) == EEPN_ERR_INVALID_ARGUMENT);
    eepn_trace* out = nullptr;
    CHECK(eepn_trace_detrend(t, 5, &out) == EEPN_ERR_INVALID_ARGUMENT);
    eepn_trace_free(t);

    const double nan_phase[] = {0.0, std::nan("")};
    CHECK(eepn_trace_create(nan_phase, 2, 1.0, &t) == EEPN_ERR_INVALID_ARGUMENT);

    // Freeing null handles is a no-op.
    eepn_trace_free(nullptr);
    eepn_series_free(nullptr);
    eepn_config_free(nullptr);
}

TEST_CASE("trace and series handles") {
    std::vector<double> ramp(100);
    for (std::size_t i = 0; i < ramp.size(); ++i) {
        ramp[i] = 0.5 * static_cast<double>(i);
    }
    eepn_trace* t = nullptr;
    REQUIRE(eepn_trace_create(ramp.data(), ramp.size(), 2e9, &t) == EEPN_OK);
    CHECK(eepn_trace_length(t) == 100);
    CHECK(eepn_trace_sample_rate(t) == 2e9);
    CHECK(eepn_trace_data(t)[99] == 49.5);

    eepn_series* mv = nullptr;
    REQUIRE(eepn_moving_variance(t, 5, &mv) == EEPN_OK);
    CHECK(eepn_series_length(mv) == 96);
    CHECK(eepn_series_indices(mv)[0] == 2);
    CHECK(eepn_series_values(mv)[10] == doctest::Approx(0.25 * (25.0 - 1.0) / 12.0));

    eepn_trace* half = nullptr;
    REQUIRE(eepn_trace_resample(t, 1e9, &half) == EEPN_OK);
    CHECK(eepn_trace_length(half) == 50);
    CHECK(eepn_trace_data(half)[1] == doctest::Approx(1.0));

    TempDir d("eepn_test_capi_handles");
    REQUIRE(eepn_trace_save(half, (d / "h.txt").c_str()) == EEPN_OK);
    eepn_trace* back = nullptr;
    REQUIRE(eepn_trace_load((d / "h.txt").c_str(), &back) == EEPN_OK);
    CHECK(eepn_trace_length(back) == 50);
    CHECK(std::memcmp(eepn_trace_data(back), eepn_trace_data(half), 50 * sizeof(double)) == 0);

    REQUIRE(eepn_series_save_csv(mv, (d / "mv.csv").c_str()) == EEPN_OK);
    eepn_series* mv2 = nullptr;
    REQUIRE(eepn_series_load_csv((d / "mv.csv").c_str(), &mv2) == EEPN_OK);
    double rho = 5.0;
    int defined = 7;
    REQUIRE(eepn_pearson(mv, mv2, &rho, &defined) == EEPN_OK);
    CHECK(defined == 0);
    CHECK(rho == 0.0);

    eepn_series_free(mv2);
    eepn_series_free(mv);
    eepn_trace_free(back);
    eepn_trace_free(half);
    eepn_trace_free(t);
}

TEST_CASE("temporal prediction through the C API") {
    eepn_trace* w = nullptr;
    REQUIRE(eepn_trace_wiener(210e3, 40'000, 130e9, 5, &w) == EEPN_OK);
    eepn_series* p = nullptr;
    REQUIRE(eepn_temporal_gn_predict(w, 2438, 500, &p) == EEPN_OK);
    CHECK(eepn_series_length(p) > 50);
    CHECK(eepn_series_indices(p)[1] - eepn_series_indices(p)[0] == 501);
    double rho = 0.0;
    int defined = 0;
    REQUIRE(eepn_pearson(p, p, &rho, &defined) == EEPN_OK);
    CHECK(defined == 1);
    CHECK(rho == doctest::Approx(1.0));
    CHECK(eepn_pearson(p, nullptr, &rho, &defined) == EEPN_ERR_INVALID_ARGUMENT);
    eepn_series_free(p);
    eepn_trace_free(w);
}

TEST_CASE("commands") {
    TempDir d("eepn_test_capi_cmd");
    eepn_config* cfg = nullptr;
    REQUIRE(eepn_config_parse("n_symbols = 65536\nseed = 9\n", &cfg) == EEPN_OK);
    REQUIRE(eepn_simulate(cfg, (d / "sim").c_str()) == EEPN_OK);
    REQUIRE(eepn_prep_trace((d / "sim/phase_trace.txt").c_str(), 5, 130e9, (d / "prep.txt").c_str()) == EEPN_OK);
    REQUIRE(eepn_predict(cfg, (d / "sim/phase_trace.txt").c_str(), (d / "pred").c_str()) == EEPN_OK);
    CHECK(fs::exists(d.path / "pred/temporal_gn.csv"));

    eepn_compare_result r{};
    REQUIRE(eepn_compare((d / "sim/measured_sigma2.csv").c_str(), (d / "pred/temporal_gn.csv").c_str(),
                         (d / "cmp").c_str(), &r) == EEPN_OK);
    CHECK(r.rho_defined == 1);
    CHECK(r.rho > 0.5);
    CHECK(fs::exists(d.path / "cmp/report.txt"));

    size_t needed = 0;
    CHECK(eepn_format_compare_report(&r, nullptr, 0, &needed) == EEPN_OK);
    CHECK(needed > 20);
    std::vector<char> small(8);
    CHECK(eepn_format_compare_report(&r, small.data(), small.size(), &needed) == EEPN_OK);
    CHECK(std::strlen(small.data()) == 7);
    std::vector<char> buf(needed + 1);
    REQUIRE(eepn_format_compare_report(&r, buf.data(), buf.size(), nullptr) == EEPN_OK);
    CHECK(std::string(buf.data()).rfind("rho=", 0) == 0);

    CHECK(eepn_compare((d / "sim/measured_sigma2.csv").c_str(), (d / "missing.csv").c_str(), nullptr, &r) ==
          EEPN_ERR_IO);
    eepn_config* big_m = nullptr;
    REQUIRE(eepn_config_parse("n_symbols = 65536\nblock_m = 100000\n", &big_m) == EEPN_OK);
    CHECK(eepn_simulate(big_m, (d / "x").c_str()) == EEPN_ERR_INVALID_ARGUMENT);
    CHECK(last_error().find("insufficient symbols") != std::string::npos);
    eepn_config_free(big_m);
    eepn_config_free(cfg);
}
