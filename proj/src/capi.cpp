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

#include "eepn/eepn.h"

#include <cstring>
#include <new>
#include <sstream>
#include <string>

#include "eepn/error.hpp"
#include "eepn/experiment.hpp"

struct eepn_config {
    eepn::ExperimentConfig value;
};

struct eepn_trace {
    eepn::PhaseTrace value;
};

struct eepn_series {
    std::vector<std::size_t> indices;
    std::vector<double> values;
    std::size_t block_size = 0;

    static eepn_series* from(const eepn::BlockSeries& s) {
        return new eepn_series{s.centers, s.values, s.block_size};
    }
    eepn::BlockSeries block_series() const { return {block_size, indices, values}; }
};

namespace {

thread_local std::string last_error;

eepn_status status_of(eepn::ErrorKind kind) {
    switch (kind) {
        case eepn::ErrorKind::invalid_argument: return EEPN_ERR_INVALID_ARGUMENT;
        case eepn::ErrorKind::out_of_range: return EEPN_ERR_OUT_OF_RANGE;
        case eepn::ErrorKind::format: return EEPN_ERR_FORMAT;
        case eepn::ErrorKind::numeric: return EEPN_ERR_NUMERIC;
        case eepn::ErrorKind::config: return EEPN_ERR_CONFIG;
        case eepn::ErrorKind::io: return EEPN_ERR_IO;
    }
    return EEPN_ERR_INTERNAL;
}

eepn_status fail(eepn_status status, std::string message) {
    last_error = std::move(message);
    return status;
}

// Runs fn and translates any exception into a status code plus last_error.
template <typename Fn>
eepn_status guarded(Fn&& fn) {
    try {
        fn();
        return EEPN_OK;
    } catch (const eepn::Error& e) {
        return fail(status_of(e.kind()), e.what());
    } catch (const std::bad_alloc&) {
        return fail(EEPN_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(EEPN_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(EEPN_ERR_INTERNAL, "unknown error");
    }
}

bool null_args(std::initializer_list<const void*> ptrs) {
    for (const void* p : ptrs) {
        if (p == nullptr) {
            last_error = "null argument";
            return true;
        }
    }
    return false;
}

}  // namespace

extern "C" {

const char* eepn_version(void) { return eepn::library_version; }

const char* eepn_last_error(void) { return last_error.c_str(); }

const char* eepn_status_name(eepn_status status) {
    switch (status) {
        case EEPN_OK: return "ok";
        case EEPN_ERR_INVALID_ARGUMENT: return "invalid-argument";
        case EEPN_ERR_OUT_OF_RANGE: return "out-of-range";
        case EEPN_ERR_FORMAT: return "format-error";
        case EEPN_ERR_NUMERIC: return "numeric-error";
        case EEPN_ERR_CONFIG: return "config-error";
        case EEPN_ERR_IO: return "io-error";
        case EEPN_ERR_INTERNAL: return "internal-error";
    }
    return "unknown";
}

eepn_status eepn_config_parse(const char* text, eepn_config** out) {
    if (null_args({text, out})) {
        return EEPN_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] { *out = new eepn_config{eepn::parse_config(text)}; });
}

eepn_status eepn_config_load(const char* path, eepn_config** out) {
    if (null_args({path, out})) {
        return EEPN_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] { *out = new eepn_config{eepn::load_config(path)}; });
}

void eepn_config_free(eepn_config* config) { delete config; }

eepn_status eepn_trace_create(const double* phases, size_t n, double sample_rate, eepn_trace** out) {
    if (null_args({out}) || (n > 0 && null_args({phases}))) {
        return EEPN_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        eepn::PhaseTrace t{std::vector<double>(phases, phases + n), sample_rate};
        t.validate();
        *out = new eepn_trace{std::move(t)};
    });
}

eepn_status eepn_trace_wiener(double linewidth_hz, size_t n, double rate_hz, uint64_t seed, eepn_trace** out) {
    if (null_args({out})) {
        return EEPN_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] { *out = new eepn_trace{eepn::wiener_phase(linewidth_hz, n, rate_hz, seed)}; });
}

eepn_status eepn_trace_load(const char* path, eepn_trace** out) {
    if (null_args({path, out})) {
        return EEPN_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] { *out = new eepn_trace{eepn::load_phase_trace(path)}; });
}

eepn_status eepn_trace_save(const eepn_trace* trace, const char* path) {
    if (null_args({trace, path})) {
        return EEPN_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] { eepn::save_phase_trace(path, trace->value); });
}

size_t eepn_trace_length(const eepn_trace* trace) { return trace ? trace->value.size() : 0; }

double eepn_trace_sample_rate(const eepn_trace* trace) { return trace ? trace->value.sample_rate : 0.0; }

const double* eepn_trace_data(const eepn_trace* trace) { return trace ? trace->value.phases.data() : nullptr; }

eepn_status eepn_trace_detrend(const eepn_trace* trace, int degree, eepn_trace** out) {
    if (null_args({trace, out})) {
        return EEPN_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] { *out = new eepn_trace{eepn::detrend_poly(trace->value, degree)}; });
}

eepn_status eepn_trace_resample(const eepn_trace* trace, double target_rate, eepn_trace** out) {
    if (null_args({trace, out})) {
        return EEPN_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] { *out = new eepn_trace{eepn::resample_phase(trace->value, target_rate)}; });
}

void eepn_trace_free(eepn_trace* trace) { delete trace; }

eepn_status eepn_series_load_csv(const char* path, eepn_series** out) {
    if (null_args({path, out})) {
        return EEPN_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] { *out = eepn_series::from(eepn::load_series_csv(path)); });
}

eepn_status eepn_series_save_csv(const eepn_series* series, const char* path) {
    if (null_args({series, path})) {
        return EEPN_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] { eepn::save_series_csv(path, series->block_series()); });
}

size_t eepn_series_length(const eepn_series* series) { return series ? series->values.size() : 0; }

const double* eepn_series_values(const eepn_series* series) { return series ? series->values.data() : nullptr; }

const size_t* eepn_series_indices(const eepn_series* series) { return series ? series->indices.data() : nullptr; }

void eepn_series_free(eepn_series* series) { delete series; }

eepn_status eepn_moving_variance(const eepn_trace* trace, size_t window, eepn_series** out) {
    if (null_args({trace, out})) {
        return EEPN_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        const auto mv = eepn::moving_variance(trace->value, window);
        auto* s = new eepn_series;
        s->values = mv.values;
        s->indices.resize(mv.size());
        for (std::size_t i = 0; i < mv.size(); ++i) {
            s->indices[i] = mv.first + i;
        }
        *out = s;
    });
}

eepn_status eepn_temporal_gn_predict(const eepn_trace* trace, size_t n_cd, size_t m, eepn_series** out) {
    if (null_args({trace, out})) {
        return EEPN_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] { *out = eepn_series::from(eepn::temporal_gn_predict(trace->value, n_cd, m)); });
}

eepn_status eepn_pearson(const eepn_series* a, const eepn_series* b, double* rho, int* rho_defined) {
    if (null_args({a, b, rho})) {
        return EEPN_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        const auto c = eepn::pearson(a->block_series(), b->block_series());
        *rho = c.rho;
        if (rho_defined) {
            *rho_defined = c.defined ? 1 : 0;
        }
    });
}

eepn_status eepn_simulate(const eepn_config* config, const char* out_dir) {
    if (null_args({config, out_dir})) {
        return EEPN_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] { eepn::write_simulation_artifacts(eepn::run_simulation(config->value), out_dir); });
}

eepn_status eepn_predict(const eepn_config* config, const char* trace_path, const char* out_dir) {
    if (null_args({config, trace_path, out_dir})) {
        return EEPN_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        const auto trace = eepn::load_phase_trace(trace_path);
        eepn::write_prediction_artifacts(eepn::run_prediction(config->value, trace), out_dir);
    });
}

eepn_status eepn_compare(const char* series_a_path, const char* series_b_path, const char* out_dir,
                         eepn_compare_result* out) {
    if (null_args({series_a_path, series_b_path, out})) {
        return EEPN_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        const auto a = eepn::load_series_csv(series_a_path);
        const auto b = eepn::load_series_csv(series_b_path);
        const auto report = eepn::compare_series(a, b);
        if (out_dir) {
            eepn::write_compare_artifacts(report, out_dir);
        }
        *out = eepn_compare_result{report.correlation.rho, report.correlation.defined ? 1 : 0, report.mean_a,
                                   report.mean_b, report.n_blocks};
    });
}

eepn_status eepn_format_compare_report(const eepn_compare_result* result, char* buf, size_t cap, size_t* needed) {
    if (null_args({result}) || (cap > 0 && null_args({buf}))) {
        return EEPN_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        eepn::CompareReport r;
        r.correlation = {result->rho, result->rho_defined != 0};
        r.mean_a = result->mean_a;
        r.mean_b = result->mean_b;
        r.n_blocks = result->n_blocks;
        std::ostringstream os;
        eepn::write_compare_report(os, r);
        const std::string text = os.str();
        if (needed) {
            *needed = text.size();
        }
        if (cap > 0) {
            const std::size_t n = std::min(cap - 1, text.size());
            std::memcpy(buf, text.data(), n);
            buf[n] = '\0';
        }
    });
}

eepn_status eepn_prep_trace(const char* raw_path, int degree, double target_rate, const char* out_path) {
    if (null_args({raw_path, out_path})) {
        return EEPN_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        eepn::save_phase_trace(out_path, eepn::prep_trace(eepn::load_phase_trace(raw_path), degree, target_rate));
    });
}

}  // extern "C"
