/*
   Copyright 2026 meantest developers

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "meantest/meantest.h"

#include <cstring>
#include <new>
#include <string>

#include "meantest/csv.hpp"
#include "meantest/diagnostics.hpp"
#include "meantest/harness.hpp"
#include "meantest/report.hpp"
#include "meantest/statistic.hpp"
#include "meantest/version.hpp"

using namespace meantest;

struct meantest_sample {
    Sample sample;
};

struct meantest_result {
    BootstrapResult result;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& message) { g_last_error = message; }

char* copy_string(const std::string& s) {
    char* out = static_cast<char*>(::operator new(s.size() + 1, std::nothrow));
    if (out == nullptr) return nullptr;
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <typename Fn>
int guarded(Fn&& fn) {
    try {
        g_last_error.clear();
        return fn();
    } catch (const DimensionMismatch& e) {
        set_error(e.what());
        return MEANTEST_ERR_DIMENSION_MISMATCH;
    } catch (const IndexOutOfRange& e) {
        set_error(e.what());
        return MEANTEST_ERR_DIMENSION_MISMATCH;
    } catch (const ParseError& e) {
        set_error(e.what());
        return MEANTEST_ERR_PARSE;
    } catch (const IoError& e) {
        set_error(e.what());
        return MEANTEST_ERR_IO;
    } catch (const NonConvergence& e) {
        set_error(e.what());
        return MEANTEST_ERR_NONCONVERGENCE;
    } catch (const InvalidArgument& e) {
        set_error(e.what());
        return MEANTEST_ERR_INVALID_ARGUMENT;
    } catch (const std::exception& e) {
        set_error(e.what());
        return MEANTEST_ERR_INTERNAL;
    } catch (...) {
        set_error("unknown error");
        return MEANTEST_ERR_INTERNAL;
    }
}

int require(bool ok, const char* message) {
    if (ok) return MEANTEST_OK;
    set_error(message);
    return MEANTEST_ERR_INVALID_ARGUMENT;
}

TestConfig to_config(const meantest_test_config* config) {
    TestConfig cfg;
    cfg.alpha = config->alpha;
    cfg.b_replicates = static_cast<std::size_t>(config->b_replicates);
    cfg.seed = config->seed;
    cfg.threads = config->threads;
    if (config->mu0 != nullptr)
        cfg.mu0 = std::vector<double>(config->mu0, config->mu0 + config->mu0_len);
    return cfg;
}

int simulate_plan(ExperimentPlan plan, unsigned threads, meantest_progress_fn progress,
                  void* user, char** json_out) {
    ProgressFn sink;
    if (progress != nullptr)
        sink = [progress, user](const std::string& line) { progress(line.c_str(), user); };
    const ExperimentReport report = run_plan(plan, threads, sink);
    *json_out = copy_string(experiment_report_to_json(report));
    if (*json_out == nullptr) {
        set_error("out of memory");
        return MEANTEST_ERR_INTERNAL;
    }
    if (report.failed_cells > 0) {
        set_error(std::to_string(report.failed_cells) + " cell(s) failed; partial report");
        return MEANTEST_ERR_PARTIAL;
    }
    return MEANTEST_OK;
}

}  // namespace

extern "C" {

const char* meantest_version(void) { return version_string; }

const char* meantest_last_error(void) { return g_last_error.c_str(); }

const char* meantest_status_name(int status) {
    switch (status) {
        case MEANTEST_OK: return "ok";
        case MEANTEST_ERR_INVALID_ARGUMENT: return "invalid argument";
        case MEANTEST_ERR_DIMENSION_MISMATCH: return "dimension mismatch";
        case MEANTEST_ERR_PARSE: return "parse error";
        case MEANTEST_ERR_IO: return "i/o error";
        case MEANTEST_ERR_NONCONVERGENCE: return "no convergence";
        case MEANTEST_ERR_PARTIAL: return "partial failure";
        case MEANTEST_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

void meantest_string_free(char* s) { ::operator delete(s); }

int meantest_sample_create(const double* data, size_t n, size_t d, meantest_sample** out) {
    if (int rc = require(out != nullptr, "out must not be NULL")) return rc;
    if (int rc = require(data != nullptr, "data must not be NULL")) return rc;
    return guarded([&] {
        Matrix m(n, d);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < d; ++j) m(i, j) = data[i * d + j];
        *out = new meantest_sample{Sample(std::move(m))};
        return MEANTEST_OK;
    });
}

int meantest_sample_from_csv(const char* path, meantest_sample** out) {
    if (int rc = require(out != nullptr && path != nullptr, "path/out must not be NULL"))
        return rc;
    return guarded([&] {
        *out = new meantest_sample{Sample(read_matrix_csv(path))};
        return MEANTEST_OK;
    });
}

void meantest_sample_free(meantest_sample* sample) { delete sample; }

size_t meantest_sample_rows(const meantest_sample* sample) {
    return sample != nullptr ? sample->sample.n() : 0;
}

size_t meantest_sample_cols(const meantest_sample* sample) {
    return sample != nullptr ? sample->sample.d() : 0;
}

int meantest_run_test(const meantest_sample* sample, const meantest_test_config* config,
                      meantest_result** out) {
    if (int rc = require(sample != nullptr && config != nullptr && out != nullptr,
                         "sample/config/out must not be NULL"))
        return rc;
    return guarded([&] {
        *out = new meantest_result{run_test(sample->sample, to_config(config))};
        return MEANTEST_OK;
    });
}

double meantest_result_statistic(const meantest_result* result) {
    return result->result.statistic;
}

double meantest_result_quantile(const meantest_result* result) {
    return result->result.quantile;
}

double meantest_result_p_value(const meantest_result* result) { return result->result.p_value; }

int meantest_result_reject(const meantest_result* result) {
    return result->result.reject ? 1 : 0;
}

size_t meantest_result_replicate_count(const meantest_result* result) {
    return result->result.replicates.size();
}

int meantest_result_copy_replicates(const meantest_result* result, double* buf, size_t len) {
    if (int rc = require(result != nullptr && buf != nullptr, "result/buf must not be NULL"))
        return rc;
    if (int rc = require(len <= result->result.replicates.size(),
                         "len exceeds the replicate count"))
        return rc;
    std::memcpy(buf, result->result.replicates.data(), len * sizeof(double));
    return MEANTEST_OK;
}

int meantest_result_to_json(const meantest_result* result, const meantest_sample* sample,
                            const meantest_test_config* config, char** json_out) {
    if (int rc = require(result != nullptr && sample != nullptr && config != nullptr &&
                             json_out != nullptr,
                         "result/sample/config/json_out must not be NULL"))
        return rc;
    return guarded([&] {
        const std::string json = test_report_to_json(sample->sample.n(), sample->sample.d(),
                                                     to_config(config), result->result);
        *json_out = copy_string(json);
        if (*json_out == nullptr) {
            set_error("out of memory");
            return static_cast<int>(MEANTEST_ERR_INTERNAL);
        }
        return static_cast<int>(MEANTEST_OK);
    });
}

void meantest_result_free(meantest_result* result) { delete result; }

int meantest_diagnose(const meantest_sample* sample, const double* eps_grid, size_t eps_len,
                      size_t l_projection, char** json_out) {
    if (int rc = require(sample != nullptr && json_out != nullptr,
                         "sample/json_out must not be NULL"))
        return rc;
    if (int rc = require(eps_grid != nullptr || eps_len == 0,
                         "eps_grid must not be NULL when eps_len > 0"))
        return rc;
    return guarded([&] {
        std::vector<double> grid;
        if (eps_len > 0)
            grid.assign(eps_grid, eps_grid + eps_len);
        else
            grid = default_eps_grid();
        const DiagnosticsReport report = full_report(sample->sample, grid, l_projection);
        *json_out = copy_string(diagnostics_to_json(report));
        if (*json_out == nullptr) {
            set_error("out of memory");
            return static_cast<int>(MEANTEST_ERR_INTERNAL);
        }
        return static_cast<int>(MEANTEST_OK);
    });
}

int meantest_simulate_text(const char* plan_text, unsigned threads,
                           meantest_progress_fn progress, void* user, char** json_out) {
    if (int rc = require(plan_text != nullptr && json_out != nullptr,
                         "plan_text/json_out must not be NULL"))
        return rc;
    return guarded([&] {
        return simulate_plan(parse_plan_text(plan_text), threads, progress, user, json_out);
    });
}

int meantest_simulate_file(const char* plan_path, unsigned threads,
                           meantest_progress_fn progress, void* user, char** json_out) {
    if (int rc = require(plan_path != nullptr && json_out != nullptr,
                         "plan_path/json_out must not be NULL"))
        return rc;
    return guarded([&] {
        return simulate_plan(parse_plan_file(plan_path), threads, progress, user, json_out);
    });
}

int meantest_report_csv(const char* report_json, char** csv_out) {
    if (int rc = require(report_json != nullptr && csv_out != nullptr,
                         "report_json/csv_out must not be NULL"))
        return rc;
    return guarded([&] {
        const ExperimentReport report = experiment_report_from_json(report_json);
        *csv_out = copy_string(experiment_report_to_csv(report));
        if (*csv_out == nullptr) {
            set_error("out of memory");
            return static_cast<int>(MEANTEST_ERR_INTERNAL);
        }
        return static_cast<int>(MEANTEST_OK);
    });
}

int meantest_vector_from_csv(const char* path, double** out, size_t* len) {
    if (int rc = require(path != nullptr && out != nullptr && len != nullptr,
                         "path/out/len must not be NULL"))
        return rc;
    return guarded([&] {
        const std::vector<double> v = read_vector_csv(path);
        auto* buf = static_cast<double*>(::operator new(v.size() * sizeof(double)));
        std::memcpy(buf, v.data(), v.size() * sizeof(double));
        *out = buf;
        *len = v.size();
        return MEANTEST_OK;
    });
}

void meantest_vector_free(double* v) { ::operator delete(v); }

}  // extern "C"
