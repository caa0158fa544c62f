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

// Command-line front end; all computation goes through the C API of
// libmeantest. Exit codes: 0 success, 1 experiment finished with failed
// cells, 2 usage or input error.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "meantest/meantest.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPartial = 1;
constexpr int kExitUsage = 2;

void print_error(const std::string& context) {
    std::cerr << "meantest: " << context;
    const char* detail = meantest_last_error();
    if (detail != nullptr && detail[0] != '\0') std::cerr << ": " << detail;
    std::cerr << "\n";
}

bool write_file(const std::string& path, const char* text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "meantest: cannot write '" << path << "'\n";
        return false;
    }
    out << text;
    return out.good();
}

struct SampleHandle {
    meantest_sample* ptr = nullptr;
    ~SampleHandle() { meantest_sample_free(ptr); }
};

struct ResultHandle {
    meantest_result* ptr = nullptr;
    ~ResultHandle() { meantest_result_free(ptr); }
};

struct StringHandle {
    char* ptr = nullptr;
    ~StringHandle() { meantest_string_free(ptr); }
};

struct VectorHandle {
    double* ptr = nullptr;
    size_t len = 0;
    ~VectorHandle() { meantest_vector_free(ptr); }
};

int run_test_command(const std::string& input, double alpha, std::uint64_t b,
                     std::uint64_t seed, unsigned threads, const std::string& mu0_path,
                     const std::vector<double>& mu0_inline, const std::string& out_path) {
    SampleHandle sample;
    if (meantest_sample_from_csv(input.c_str(), &sample.ptr) != MEANTEST_OK) {
        print_error("cannot read '" + input + "'");
        return kExitUsage;
    }

    VectorHandle mu0_file;
    const double* mu0 = nullptr;
    size_t mu0_len = 0;
    if (!mu0_path.empty()) {
        if (meantest_vector_from_csv(mu0_path.c_str(), &mu0_file.ptr, &mu0_file.len) !=
            MEANTEST_OK) {
            print_error("cannot read mu0 from '" + mu0_path + "'");
            return kExitUsage;
        }
        mu0 = mu0_file.ptr;
        mu0_len = mu0_file.len;
    } else if (!mu0_inline.empty()) {
        mu0 = mu0_inline.data();
        mu0_len = mu0_inline.size();
    }

    meantest_test_config config{};
    config.alpha = alpha;
    config.b_replicates = b;
    config.seed = seed;
    config.mu0 = mu0;
    config.mu0_len = mu0_len;
    config.threads = threads;

    ResultHandle result;
    if (meantest_run_test(sample.ptr, &config, &result.ptr) != MEANTEST_OK) {
        print_error("test failed");
        return kExitUsage;
    }

    StringHandle json;
    if (meantest_result_to_json(result.ptr, sample.ptr, &config, &json.ptr) != MEANTEST_OK) {
        print_error("cannot build report");
        return kExitUsage;
    }
    std::cout << json.ptr;
    if (!out_path.empty() && !write_file(out_path, json.ptr)) return kExitUsage;
    return kExitOk;
}

void progress_to_stderr(const char* line, void*) { std::cerr << line << "\n"; }

int run_simulate_command(const std::string& plan_path, unsigned threads,
                         const std::string& out_path, const std::string& csv_path) {
    StringHandle json;
    const int rc = meantest_simulate_file(plan_path.c_str(), threads, progress_to_stderr,
                                          nullptr, &json.ptr);
    if (rc != MEANTEST_OK && rc != MEANTEST_ERR_PARTIAL) {
        print_error("simulate failed");
        return kExitUsage;
    }
    if (rc == MEANTEST_ERR_PARTIAL)
        std::cerr << "meantest: " << meantest_last_error() << "\n";

    if (out_path.empty())
        std::cout << json.ptr;
    else if (!write_file(out_path, json.ptr))
        return kExitUsage;

    if (!csv_path.empty()) {
        StringHandle csv;
        if (meantest_report_csv(json.ptr, &csv.ptr) != MEANTEST_OK) {
            print_error("cannot flatten report");
            return kExitUsage;
        }
        if (!write_file(csv_path, csv.ptr)) return kExitUsage;
    }
    return rc == MEANTEST_ERR_PARTIAL ? kExitPartial : kExitOk;
}

int run_diagnose_command(const std::string& input, const std::vector<double>& eps,
                         std::uint64_t l_projection, const std::string& out_path) {
    SampleHandle sample;
    if (meantest_sample_from_csv(input.c_str(), &sample.ptr) != MEANTEST_OK) {
        print_error("cannot read '" + input + "'");
        return kExitUsage;
    }
    StringHandle json;
    if (meantest_diagnose(sample.ptr, eps.empty() ? nullptr : eps.data(), eps.size(),
                          static_cast<size_t>(l_projection), &json.ptr) != MEANTEST_OK) {
        print_error("diagnose failed");
        return kExitUsage;
    }
    std::cout << json.ptr;
    if (!out_path.empty() && !write_file(out_path, json.ptr)) return kExitUsage;
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string("bootstrap mean test for high-dimensional data (v") +
                 meantest_version() + ")"};
    app.require_subcommand(1);

    // test
    auto* test_cmd = app.add_subcommand(
        "test", "Test H0: mean = mu0 on CSV data with bootstrap critical values");
    std::string test_input, test_mu0_path, test_out;
    std::vector<double> test_mu0_inline;
    double test_alpha = 0.05;
    std::uint64_t test_b = 2000;
    std::uint64_t test_seed = 0;
    unsigned test_threads = 0;
    test_cmd->add_option("--input", test_input, "CSV file, one observation per row")
        ->required();
    test_cmd->add_option("--alpha", test_alpha, "significance level in (0,1)")
        ->capture_default_str();
    test_cmd->add_option("--b", test_b, "bootstrap replicates")->capture_default_str();
    test_cmd->add_option("--seed", test_seed, "master seed (required; no time seeding)")
        ->required();
    test_cmd->add_option("--mu0", test_mu0_path, "CSV file with the hypothesized mean");
    test_cmd->add_option("--mu0-list", test_mu0_inline,
                         "hypothesized mean as comma-separated numbers")
        ->delimiter(',')
        ->excludes("--mu0");
    test_cmd->add_option("--out", test_out, "also write the JSON report to this file");
    test_cmd->add_option("--threads", test_threads, "worker threads (0 = auto)");

    // simulate
    auto* sim_cmd = app.add_subcommand("simulate", "Run an experiment plan file");
    std::string sim_plan, sim_out, sim_csv;
    unsigned sim_threads = 0;
    sim_cmd->add_option("--plan", sim_plan, "plan file (key = value lines)")->required();
    sim_cmd->add_option("--out", sim_out, "report JSON output file (default: stdout)");
    sim_cmd->add_option("--csv", sim_csv, "also flatten the cells to this CSV file");
    sim_cmd->add_option("--threads", sim_threads, "worker threads (0 = auto)");

    // diagnose
    auto* diag_cmd =
        app.add_subcommand("diagnose", "Lindeberg / covariance diagnostics for CSV data");
    std::string diag_input, diag_out;
    std::vector<double> diag_eps;
    std::uint64_t diag_l = 0;
    diag_cmd->add_option("--input", diag_input, "CSV file, one observation per row")
        ->required();
    diag_cmd->add_option("--eps", diag_eps,
                         "epsilon grid as comma-separated numbers (default 2^-4..2^4)")
        ->delimiter(',');
    diag_cmd->add_option("--l", diag_l, "projection level (default: all columns)");
    diag_cmd->add_option("--out", diag_out, "also write the JSON report to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (test_cmd->parsed())
        return run_test_command(test_input, test_alpha, test_b, test_seed, test_threads,
                                test_mu0_path, test_mu0_inline, test_out);
    if (sim_cmd->parsed()) return run_simulate_command(sim_plan, sim_threads, sim_out, sim_csv);
    if (diag_cmd->parsed()) return run_diagnose_command(diag_input, diag_eps, diag_l, diag_out);
    return kExitUsage;
}
