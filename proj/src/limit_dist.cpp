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

#include "meantest/limit_dist.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace meantest {

std::size_t order_stat_rank(double p, std::size_t m) {
    if (!(p > 0.0 && p < 1.0)) throw InvalidProbability("probability must lie in (0,1)");
    if (m == 0) throw InvalidArgument("empty value list");
    const double nudged = p * static_cast<double>(m) - 1e-9;
    double r = std::ceil(nudged);
    if (r < 1.0) r = 1.0;
    auto rank = static_cast<std::size_t>(r);
    return std::min(rank, m);
}

EmpiricalCdf::EmpiricalCdf(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw InvalidArgument("empirical CDF needs at least one value");
    std::sort(values_.begin(), values_.end());
}

double EmpiricalCdf::cdf(double x) const noexcept {
    const auto it = std::upper_bound(values_.begin(), values_.end(), x);
    return static_cast<double>(it - values_.begin()) / static_cast<double>(values_.size());
}

double EmpiricalCdf::quantile(double p) const {
    return values_[order_stat_rank(p, values_.size()) - 1];
}

double ks_distance(const EmpiricalCdf& a, const EmpiricalCdf& b) {
    const auto& x = a.values();
    const auto& y = b.values();
    const double nx = static_cast<double>(x.size());
    const double ny = static_cast<double>(y.size());
    std::size_t i = 0, j = 0;
    double best = 0.0;
    // Step through the merged distinct values; after each one the running
    // pair (i/nx, j/ny) is both the value at that point and the left limit
    // at the next, so every plateau is covered.
    while (i < x.size() || j < y.size()) {
        double v;
        if (i < x.size() && j < y.size())
            v = std::min(x[i], y[j]);
        else if (i < x.size())
            v = x[i];
        else
            v = y[j];
        while (i < x.size() && x[i] == v) ++i;
        while (j < y.size() && y[j] == v) ++j;
        const double diff =
            std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny);
        best = std::max(best, diff);
    }
    return best;
}

std::vector<double> sample_weighted_chisquare(const WeightedChiSquare& model, std::size_t m,
                                              Rng& rng) {
    if (m == 0) throw InvalidArgument("draw count must be >= 1");
    for (double l : model.lambdas)
        if (!(l >= 0.0)) throw InvalidArgument("weights must be nonnegative");
    std::vector<double> draws(m);
    for (std::size_t i = 0; i < m; ++i) {
        double v = 0.0;
        for (double l : model.lambdas) {
            const double z = rng.gaussian();
            v += l * z * z;
        }
        draws[i] = v;
    }
    return draws;
}

WeightedChiSquare limit_from_covariance(const SymmetricMatrix& gamma) {
    const Spectrum spec = eigen_symmetric(gamma);
    const double tol = 1e-10 * (1.0 + std::abs(gamma.trace()));
    WeightedChiSquare model;
    model.lambdas.reserve(spec.eigenvalues.size());
    for (double ev : spec.eigenvalues) {
        if (ev < -tol)
            throw InvalidArgument("covariance is not positive semi-definite (eigenvalue " +
                                  std::to_string(ev) + ")");
        model.lambdas.push_back(std::max(ev, 0.0));
    }
    model.truncation_tail = 0.0;
    return model;
}

}  // namespace meantest
