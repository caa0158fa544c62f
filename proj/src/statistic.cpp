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

#include "meantest/statistic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "meantest/limit_dist.hpp"
#include "meantest/parallel.hpp"

namespace meantest {

void TestConfig::validate() const {
    if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("alpha must lie in (0,1)");
    if (b_replicates < 1) throw InvalidArgument("b_replicates must be >= 1");
}

double v_statistic(const Sample& sample, std::span<const double> mu0) {
    const std::size_t n = sample.n(), d = sample.d();
    if (mu0.size() != d)
        throw DimensionMismatch("mu0 has length " + std::to_string(mu0.size()) +
                                ", data has " + std::to_string(d) + " columns");
    std::vector<double> acc(d, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto row = sample.row(i);
        for (std::size_t k = 0; k < d; ++k) acc[k] += row[k] - mu0[k];
    }
    const double inv_n = 1.0 / static_cast<double>(n);
    double ssq = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
        const double m = acc[k] * inv_n;
        ssq += m * m;
    }
    return static_cast<double>(n) * ssq;
}

double v_statistic(const Sample& sample) {
    const std::vector<double> zeros(sample.d(), 0.0);
    return v_statistic(sample, zeros);
}

namespace {

double replicate_with_scratch(const Sample& sample, std::span<const double> xbar, Rng& rng,
                              std::span<double> acc) {
    const std::size_t n = sample.n(), d = sample.d();
    std::fill(acc.begin(), acc.end(), 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        const auto row = sample.row(rng.uniform_below(n));
        for (std::size_t c = 0; c < d; ++c) acc[c] += row[c];
    }
    const double inv_n = 1.0 / static_cast<double>(n);
    double ssq = 0.0;
    for (std::size_t c = 0; c < d; ++c) {
        const double m = acc[c] * inv_n - xbar[c];
        ssq += m * m;
    }
    return static_cast<double>(n) * ssq;
}

}  // namespace

double bootstrap_replicate(const Sample& sample, Rng& rng) {
    const std::vector<double> xbar = mean(sample);
    std::vector<double> acc(sample.d());
    return replicate_with_scratch(sample, xbar, rng, acc);
}

std::vector<double> bootstrap_replicates(const Sample& sample, std::size_t b,
                                         std::uint64_t seed, unsigned threads) {
    if (b < 1) throw InvalidArgument("b_replicates must be >= 1");
    const std::vector<double> xbar = mean(sample);
    std::vector<double> replicates(b);
    const unsigned workers = resolve_thread_count(threads);
    if (workers <= 1 || b < 64) {
        std::vector<double> acc(sample.d());
        for (std::size_t j = 0; j < b; ++j) {
            Rng rng(derive(seed, j));
            replicates[j] = replicate_with_scratch(sample, xbar, rng, acc);
        }
    } else {
        parallel_for(b, workers, [&](std::size_t j) {
            Rng rng(derive(seed, j));
            std::vector<double> acc(sample.d());
            replicates[j] = replicate_with_scratch(sample, xbar, rng, acc);
        });
    }
    return replicates;
}

BootstrapResult bootstrap_distribution(const Sample& sample, const TestConfig& config) {
    config.validate();
    BootstrapResult result;
    if (config.mu0.has_value()) {
        result.statistic = v_statistic(sample, *config.mu0);
    } else {
        result.statistic = v_statistic(sample);
    }
    result.replicates =
        bootstrap_replicates(sample, config.b_replicates, config.seed, config.threads);

    const EmpiricalCdf cdf{std::vector<double>(result.replicates)};
    result.quantile = cdf.quantile(1.0 - config.alpha);

    std::size_t at_least = 0;
    for (double r : result.replicates)
        if (r >= result.statistic) ++at_least;
    result.p_value = static_cast<double>(1 + at_least) /
                     static_cast<double>(config.b_replicates + 1);
    result.reject = result.statistic > result.quantile;
    return result;
}

BootstrapResult run_test(const Sample& sample, const TestConfig& config) {
    return bootstrap_distribution(sample, config);
}

}  // namespace meantest
