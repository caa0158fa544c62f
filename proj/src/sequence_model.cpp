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

#include "meantest/sequence_model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace meantest {

void SpectralModel::validate() const {
    if (use_decay) {
        if (!(decay_c > 0.0)) throw InvalidModel("decay constant c must be > 0");
        if (!(decay_gamma > 1.0))
            throw InvalidModel("decay exponent gamma must be > 1 (trace-class spectrum)");
    } else {
        for (double l : lambdas_explicit)
            if (!(l >= 0.0) || !std::isfinite(l))
                throw InvalidModel("explicit eigenvalues must be finite and >= 0");
    }
    if (innovation == Innovation::student_t && !(student_nu >= 3.0))
        throw InvalidModel("student_t degrees of freedom must be >= 3");
    if (mean_shift.has_value()) {
        double ssq = 0.0;
        for (double v : mean_shift->direction) ssq += v * v;
        if (mean_shift->delta != 0.0 && ssq == 0.0)
            throw InvalidModel("mean shift direction must be nonzero when delta != 0");
    }
}

double SpectralModel::lambda(std::size_t k) const {
    if (use_decay) return decay_c * std::pow(static_cast<double>(k + 1), -decay_gamma);
    return k < lambdas_explicit.size() ? lambdas_explicit[k] : 0.0;
}

std::vector<double> SpectralModel::lambda_head(std::size_t d) const {
    std::vector<double> head(d);
    for (std::size_t k = 0; k < d; ++k) head[k] = lambda(k);
    return head;
}

double SpectralModel::lambda_prefix_sum(std::size_t d) const {
    double s = 0.0;
    for (std::size_t k = 0; k < d; ++k) s += lambda(k);
    return s;
}

double SpectralModel::lambda_tail(std::size_t d) const {
    if (!use_decay) {
        double s = 0.0;
        for (std::size_t k = d; k < lambdas_explicit.size(); ++k) s += lambdas_explicit[k];
        return s;
    }
    constexpr std::size_t kExplicitTerms = 100000;
    double s = 0.0;
    for (std::size_t k = d; k < d + kExplicitTerms; ++k) s += lambda(k);
    // Midpoint-rule remainder for sum_{k > K} c * k^-gamma.
    const double cutoff = static_cast<double>(d + kExplicitTerms) + 0.5;
    s += decay_c * std::pow(cutoff, 1.0 - decay_gamma) / (decay_gamma - 1.0);
    return s;
}

std::vector<double> SpectralModel::mean_vector(std::size_t d) const {
    std::vector<double> mu(d, 0.0);
    if (!mean_shift.has_value() || mean_shift->delta == 0.0) return mu;
    double ssq = 0.0;
    for (double v : mean_shift->direction) ssq += v * v;
    const double scale = mean_shift->delta / std::sqrt(ssq);
    const std::size_t upto = std::min(d, mean_shift->direction.size());
    for (std::size_t k = 0; k < upto; ++k) mu[k] = scale * mean_shift->direction[k];
    return mu;
}

void TruncationRule::validate() const {
    switch (kind) {
        case Kind::fixed:
            if (fixed_d < 1) throw InvalidModel("fixed truncation dimension must be >= 1");
            break;
        case Kind::power:
            if (!(power_beta > 0.0)) throw InvalidModel("power truncation beta must be > 0");
            break;
        case Kind::log2:
            break;
    }
}

std::size_t dn_of(const TruncationRule& rule, std::size_t n) {
    if (n < 1) throw InvalidArgument("sample size must be >= 1");
    rule.validate();
    switch (rule.kind) {
        case TruncationRule::Kind::fixed:
            return rule.fixed_d;
        case TruncationRule::Kind::power: {
            const double raw = std::pow(static_cast<double>(n), rule.power_beta);
            const auto d = static_cast<std::size_t>(std::floor(raw + 1e-9));
            return std::max<std::size_t>(d, 1);
        }
        case TruncationRule::Kind::log2: {
            const auto d = static_cast<std::size_t>(std::bit_width(n) - 1);  // floor(log2 n)
            return std::max<std::size_t>(d, 1);
        }
    }
    throw InvalidArgument("unknown truncation rule");
}

namespace {

// Marsaglia-Tsang gamma(shape, 1) for shape >= 1.
double draw_gamma(Rng& rng, double shape) {
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        const double x = rng.gaussian();
        double v = 1.0 + c * x;
        if (v <= 0.0) continue;
        v = v * v * v;
        const double u = rng.uniform01();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
    }
}

}  // namespace

double draw_innovation(const SpectralModel& model, Rng& rng) {
    switch (model.innovation) {
        case Innovation::gaussian:
            return rng.gaussian();
        case Innovation::rademacher:
            return (rng.next() >> 63) ? 1.0 : -1.0;
        case Innovation::student_t: {
            const double nu = model.student_nu;
            const double chi2 = 2.0 * draw_gamma(rng, nu / 2.0);
            const double t = rng.gaussian() / std::sqrt(chi2 / nu);
            return t * std::sqrt((nu - 2.0) / nu);  // unit variance
        }
    }
    throw InvalidModel("unknown innovation law");
}

Sample generate_sample(const SpectralModel& model, std::size_t n, std::size_t d, Rng& rng) {
    model.validate();
    if (n < 1 || d < 1) throw InvalidArgument("sample dimensions must be >= 1");
    std::vector<double> sd(d);
    for (std::size_t k = 0; k < d; ++k) sd[k] = std::sqrt(model.lambda(k));
    const std::vector<double> mu = model.mean_vector(d);

    Matrix data(n, d);
    for (std::size_t i = 0; i < n; ++i) {
        const auto row = data.row(i);
        for (std::size_t k = 0; k < d; ++k)
            row[k] = mu[k] + sd[k] * draw_innovation(model, rng);
    }
    return Sample(std::move(data));
}

std::vector<double> truncate(std::span<const double> x, std::size_t l) {
    if (l < 1) throw InvalidArgument("truncation length must be >= 1");
    std::vector<double> out(l, 0.0);
    const std::size_t upto = std::min(l, x.size());
    std::copy(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(upto), out.begin());
    return out;
}

std::vector<double> embed(std::span<const double> v, std::size_t target_len) {
    if (target_len < v.size())
        throw DimensionMismatch("embedding target is shorter than the input vector");
    std::vector<double> out(target_len, 0.0);
    std::copy(v.begin(), v.end(), out.begin());
    return out;
}

std::vector<double> project(std::span<const double> x, std::size_t l) {
    if (l < 1) throw InvalidArgument("projection level must be >= 1");
    std::vector<double> out(x.size(), 0.0);
    const std::size_t upto = std::min(l, x.size());
    std::copy(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(upto), out.begin());
    return out;
}

}  // namespace meantest
