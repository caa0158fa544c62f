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

#include "meantest/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace meantest {

double lindeberg_term(const Sample& sample, double eps, std::size_t l) {
    if (!(eps > 0.0)) throw InvalidArgument("epsilon must be > 0");
    if (l < 1 || l > sample.d())
        throw IndexOutOfRange("projection level " + std::to_string(l) +
                              " outside [1, " + std::to_string(sample.d()) + "]");
    const std::size_t n = sample.n();
    std::vector<double> xbar = mean(sample);
    const double threshold_sq = eps * eps * static_cast<double>(n);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto row = sample.row(i);
        double ssq = 0.0;
        for (std::size_t k = 0; k < l; ++k) {
            const double dev = row[k] - xbar[k];
            ssq += dev * dev;
        }
        if (ssq > threshold_sq) total += ssq;
    }
    return total / static_cast<double>(n);
}

double lindeberg_term(const Sample& sample, double eps) {
    return lindeberg_term(sample, eps, sample.d());
}

double covariance_entry(const Sample& sample, std::size_t k, std::size_t l) {
    const std::size_t n = sample.n(), d = sample.d();
    if (k >= d || l >= d)
        throw IndexOutOfRange("covariance entry (" + std::to_string(k + 1) + "," +
                              std::to_string(l + 1) + ") outside a " + std::to_string(d) +
                              "-column sample");
    double cross = 0.0, mk = 0.0, ml = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto row = sample.row(i);
        cross += row[k] * row[l];
        mk += row[k];
        ml += row[l];
    }
    const double inv_n = 1.0 / static_cast<double>(n);
    return cross * inv_n - (mk * inv_n) * (ml * inv_n);
}

double trace_condition(const Sample& sample) {
    const std::size_t n = sample.n(), d = sample.d();
    double diag_sum = 0.0;
    for (std::size_t k = 0; k < d; ++k) diag_sum += covariance_entry(sample, k, k);

    double second_moment = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto row = sample.row(i);
        for (std::size_t k = 0; k < d; ++k) second_moment += row[k] * row[k];
    }
    second_moment /= static_cast<double>(n);
    const std::vector<double> xbar = mean(sample);
    double mean_norm_sq = 0.0;
    for (double v : xbar) mean_norm_sq += v * v;
    const double norm_identity = second_moment - mean_norm_sq;

    // The two routes are the same algebra summed in a different order.
    const double scale = 1.0 + second_moment;
    if (std::abs(diag_sum - norm_identity) > 1e-10 * scale)
        throw NonConvergence("trace identity violated: " + std::to_string(diag_sum) +
                             " vs " + std::to_string(norm_identity));
    return diag_sum;
}

std::vector<double> default_eps_grid() {
    std::vector<double> grid;
    for (int e = -4; e <= 4; ++e) grid.push_back(std::ldexp(1.0, e));
    return grid;
}

DiagnosticsReport full_report(const Sample& sample, std::span<const double> eps_grid,
                              std::size_t l_projection) {
    if (eps_grid.empty()) throw InvalidArgument("epsilon grid must be nonempty");
    const std::size_t d = sample.d();
    const std::size_t l = l_projection == 0 ? d : l_projection;
    if (l > d)
        throw IndexOutOfRange("projection level " + std::to_string(l) + " exceeds the " +
                              std::to_string(d) + " data columns");

    DiagnosticsReport report;
    report.n = sample.n();
    report.d = d;
    report.l_projection = l;

    std::vector<double> grid(eps_grid.begin(), eps_grid.end());
    std::sort(grid.begin(), grid.end());
    report.lindeberg.reserve(grid.size());
    for (double eps : grid)
        report.lindeberg.emplace_back(eps, lindeberg_term(sample, eps, l));

    report.trace_sum = trace_condition(sample);
    report.cov_entries.reserve(l);
    for (std::size_t k = 0; k < l; ++k)
        report.cov_entries.push_back({k, k, covariance_entry(sample, k, k)});
    return report;
}

}  // namespace meantest
