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

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "meantest/linalg.hpp"
#include "meantest/rng.hpp"

namespace meantest {

/// Configuration of one bootstrap test run.
struct TestConfig {
    double alpha = 0.05;
    std::size_t b_replicates = 2000;
    std::uint64_t seed = 0;
    /// Hypothesized mean; empty means the zero vector.
    std::optional<std::vector<double>> mu0;
    /// Worker threads for replicate evaluation; 0 = hardware default.
    unsigned threads = 0;

    void validate() const;
};

/// Outcome of a bootstrap test. replicates holds the centered bootstrap
/// statistic values in generation (stream-index) order.
struct BootstrapResult {
    std::vector<double> replicates;
    double quantile = 0.0;
    double p_value = 1.0;
    double statistic = 0.0;
    bool reject = false;
};

/// n * || mean(sample) - mu0 ||^2. Observations are centered by mu0 before
/// averaging, so shifting data and hypothesis together is an exact no-op.
double v_statistic(const Sample& sample, std::span<const double> mu0);

/// Same with mu0 = 0.
double v_statistic(const Sample& sample);

/// One centered resample: draws n indices uniformly with replacement, forms
/// the resampled mean minus the original sample mean, and returns n times
/// its squared norm.
double bootstrap_replicate(const Sample& sample, Rng& rng);

/// b replicate values; replicate j runs on the stream derive(seed, j), so
/// the vector is identical for every worker count.
std::vector<double> bootstrap_replicates(const Sample& sample, std::size_t b,
                                         std::uint64_t seed, unsigned threads = 0);

/// Full bootstrap calibration: replicates, the (1-alpha) upper order
/// statistic as critical value, the add-one p-value
/// (1 + #{replicates >= statistic}) / (b + 1), and the strict-inequality
/// decision statistic > quantile.
BootstrapResult bootstrap_distribution(const Sample& sample, const TestConfig& config);

/// The user-facing entry point; identical arithmetic serves fixed-dimension
/// data and truncated high-dimensional data.
BootstrapResult run_test(const Sample& sample, const TestConfig& config);

}  // namespace meantest
