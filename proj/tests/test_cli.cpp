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

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct Outcome {
    int exit_code = -1;
    std::string stdout_text;
    std::string stderr_text;
};

const fs::path& scratch() {
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() / "eepn_test_cli";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome run(const std::string& args) {
    const auto err = scratch() / "stderr.txt";
    const std::string cmd = std::string("'") + EEPN_LAB_PATH + "' " + args + " 2>'" + err.string() + "'";
    Outcome o;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) {
        o.stdout_text.append(buf.data(), got);
    }
    const int status = pclose(pipe);
    o.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    o.stderr_text = slurp(err);
    return o;
}

std::string path(const char* name) { return "'" + (scratch() / name).string() + "'"; }

void write(const char* name, const std::string& text) {
    std::ofstream(scratch() / name, std::ios::binary) << text;
}

int count_lines(const std::string& s) {
    int n = 0;
    for (char c : s) {
        n += c == '\n';
    }
    return n;
}

}  // namespace

TEST_CASE("full pipeline through the command line") {
    write("run.cfg", "n_symbols = 65536\nseed = 5\n");
    auto sim = run("simulate --config " + path("run.cfg") + " --out " + path("sim"));
    CHECK(sim.exit_code == 0);
    CHECK(sim.stderr_text.empty());
    for (const char* f : {"measured_sigma2.csv", "measured_snr.csv", "phase_trace.txt", "run_manifest.txt"}) {
        CHECK(fs::exists(scratch() / "sim" / f));
    }

    auto pred = run("predict --config " + path("run.cfg") + " --trace " + path("sim/phase_trace.txt") + " --out " +
                    path("pred"));
    CHECK(pred.exit_code == 0);
    for (const char* f : {"temporal_gn.csv", "fdpe_distortion.csv", "sota_gn.csv"}) {
        CHECK(fs::exists(scratch() / "pred" / f));
    }

    auto cmp = run("compare " + path("sim/measured_sigma2.csv") + " " + path("pred/temporal_gn.csv") + " --out " +
                   path("cmp"));
    CHECK(cmp.exit_code == 0);
    CHECK(cmp.stdout_text.rfind("rho=", 0) == 0);
    CHECK(cmp.stdout_text == slurp(scratch() / "cmp/report.txt"));
    CHECK(fs::exists(scratch() / "cmp/hist_a.csv"));

    auto prep = run("prep-trace --trace " + path("sim/phase_trace.txt") + " --rate 130e9 --out " + path("prep.txt"));
    CHECK(prep.exit_code == 0);
    const auto header = slurp(scratch() / "prep.txt");
    REQUIRE(header.rfind("# sample_rate_hz=", 0) == 0);
    CHECK(std::stod(header.substr(17)) == 130e9);

    // Re-running with the same seed reproduces the artifacts byte for byte.
    auto again = run("simulate --config " + path("run.cfg") + " --out " + path("sim2"));
    CHECK(again.exit_code == 0);
    CHECK(slurp(scratch() / "sim/measured_sigma2.csv") == slurp(scratch() / "sim2/measured_sigma2.csv"));
}

TEST_CASE("failures exit non-zero with one diagnostic line") {
    write("bad.cfg", "n_symbols = 65536\nsnr = 12\n");
    auto cfg = run("simulate --config " + path("bad.cfg") + " --out " + path("never"));
    CHECK(cfg.exit_code == 5);
    CHECK(count_lines(cfg.stderr_text) == 1);
    CHECK(cfg.stderr_text.rfind("eepn-lab: config-error: snr", 0) == 0);
    CHECK_FALSE(fs::exists(scratch() / "never"));

    write("short.cfg", "n_symbols = 3000\n");
    auto shrt = run("simulate --config " + path("short.cfg") + " --out " + path("never"));
    CHECK(shrt.exit_code == 1);
    CHECK(count_lines(shrt.stderr_text) == 1);
    CHECK(shrt.stderr_text.find("insufficient symbols") != std::string::npos);

    write("broken.csv", "block_index,value\n10,0.1\n5,0.2\n");
    auto fmt = run("compare " + path("broken.csv") + " " + path("broken.csv"));
    CHECK(fmt.exit_code == 3);
    CHECK(count_lines(fmt.stderr_text) == 1);
    CHECK(fmt.stderr_text.find("line 3") != std::string::npos);

    auto missing = run("compare " + path("nope_a.csv") + " " + path("nope_b.csv"));
    CHECK(missing.exit_code == 6);
    CHECK(missing.stderr_text.find("nope_a.csv") != std::string::npos);

    auto usage = run("simulate --out " + path("never"));
    CHECK(usage.exit_code == 64);
    CHECK(count_lines(usage.stderr_text) == 1);

    auto version = run("--version");
    CHECK(version.exit_code == 0);
    CHECK(version.stdout_text.find("0.1.0") != std::string::npos);
}
