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
#include <vector>

#include "eepn/channel.hpp"
#include "eepn/signal.hpp"

namespace eepn {

/// Layout of metric blocks over a symbol sequence.
///
/// Block b covers symbols [start(b), start(b) + block_len). Disjoint grids step by
/// block_len; sliding grids step by one symbol. The guard symbols at both ends of the
/// sequence are excluded so filter warm-up and circular-convolution wrap never enter a
/// block. Every producer of block series (measurement and all models) evaluates on the
/// same BlockGrid, which is what makes their outputs comparable point by point.
struct BlockGrid {
    std::size_t first = 0;
    std::size_t block_len = 1;  // M + 1
    std::size_t stride = 1;
    std::size_t count = 0;

    enum class Mode { disjoint, sliding };

    /// Throws InvalidArgument when not even one full block fits between the guards.
    static BlockGrid make(std::size_t n_symbols, std::size_t m, std::size_t guard = 0, Mode mode = Mode::disjoint);

    std::size_t m() const noexcept { return block_len - 1; }
    std::size_t start(std::size_t b) const noexcept { return first + b * stride; }
    std::size_t center(std::size_t b) const noexcept { return start(b) + block_len / 2; }
    std::size_t end() const noexcept { return count ? start(count - 1) + block_len : first; }
    std::vector<std::size_t> centers() const;

    bool operator==(const BlockGrid&) const = default;
};

/// One scalar per block, keyed by the block's center symbol index.
struct BlockSeries {
    std::size_t block_size = 0;  // M
    std::vector<std::size_t> centers;
    std::vector<double> values;

    std::size_t size() const noexcept { return values.size(); }
    double mean() const;
};

/// CD compensation: the conjugate of apply_cd.
ComplexSignal apply_cdc(const ComplexSignal& signal, double beta2_l);

inline constexpr std::size_t default_cpr_window = 65;

struct CprResult {
    ComplexSignal corrected;
    PhaseTrace phase_estimate;
};

/// Carrier phase recovery by ideal data remodulation: arg(rx * conj(tx)), unwrapped, then a
/// centered moving average over `window` symbols (shortened at the sequence edges).
CprResult cpr_idr(const ComplexSignal& rx, const ComplexSignal& tx, std::size_t window = default_cpr_window);

struct BlockMetrics {
    BlockSeries distortion;  // sum |y - x|^2 / (M + 1)
    BlockSeries snr;         // linear; +inf when a block is error free
};

BlockMetrics block_metrics(const ComplexSignal& rx, const ComplexSignal& tx, const BlockGrid& grid);
/// Disjoint blocks of M + 1 symbols starting at symbol 0.
BlockMetrics block_metrics(const ComplexSignal& rx, const ComplexSignal& tx, std::size_t m);

}  // namespace eepn
