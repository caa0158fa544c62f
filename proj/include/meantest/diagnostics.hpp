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

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "meantest/linalg.hpp"

namespace meantest {

/// Computed triangular-array CLT diagnostics for one sample. These numbers
/// are descriptive: the test itself never gates on them.
struct DiagnosticsReport {
    struct CovEntry {
        std::size_t k = 0, l = 0;  // 0-based column indices
        double value = 0.0;
    };

    std::vector<std::pair<double, double>> lindeberg;  // (eps, L_n(eps)), ascending eps
    double trace_sum = 0.0;
    std::vector<CovEntry> cov_entries;
    std::size_t n = 0;
    std::size_t d = 0;
    std::size_t l_projection = 0;
};

/// Empirical Lindeberg term
///   n^-1 sum_i ||x_i - xbar||^2 * 1{ ||x_i - xbar|| > eps * sqrt(n) }.
double lindeberg_term(const Sample& sample, double eps);

/// Same, with norms taken over the first l coordinates only.
double lindeberg_term(const Sample& sample, double eps, std::size_t l);

/// Centered cross moment n^-1 sum_i x_i(k) x_i(l) - xbar(k) xbar(l);
/// indices are 0-based.
double covariance_entry(const Sample& sample, std::size_t k, std::size_t l);

/// sum_k covariance_entry(k,k), cross-checked against the norm identity
/// n^-1 sum_i ||x_i||^2 - ||xbar||^2 (the two must agree to 1e-10 relative
/// to the second-moment scale).
double trace_condition(const Sample& sample);

/// The default epsilon grid {2^-4, 2^-3, ..., 2^4}.
std::vector<double> default_eps_grid();

/// Lindeberg values over a grid (projected to the first l_projection
/// coordinates), the trace sum, and the diagonal covariance entries up to
/// the projection level.
DiagnosticsReport full_report(const Sample& sample, std::span<const double> eps_grid,
                              std::size_t l_projection);

}  // namespace meantest
