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

#include "fft.hpp"

#include <fftw3.h>

#include <mutex>

namespace eepn::detail {

namespace {
// FFTW's planner is not re-entrant; execution on distinct plans is.
std::mutex planner_mutex;
}  // namespace

void fft_inplace(std::vector<std::complex<double>>& data, FftDirection dir) {
    if (data.size() < 2) {
        return;
    }
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    const int sign = dir == FftDirection::forward ? FFTW_FORWARD : FFTW_BACKWARD;
    fftw_plan plan = nullptr;
    {
        std::lock_guard lock(planner_mutex);
        plan = fftw_plan_dft_1d(static_cast<int>(data.size()), buf, buf, sign, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    std::lock_guard lock(planner_mutex);
    fftw_destroy_plan(plan);
}

std::size_t fast_fft_size(std::size_t n) {
    if (n <= 1) {
        return 1;
    }
    for (std::size_t m = n;; ++m) {
        std::size_t r = m;
        for (std::size_t p : {2u, 3u, 5u}) {
            while (r % p == 0) {
                r /= p;
            }
        }
        if (r == 1) {
            return m;
        }
    }
}

}  // namespace eepn::detail
