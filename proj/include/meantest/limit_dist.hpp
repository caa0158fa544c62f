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
#include <vector>

#include "meantest/errors.hpp"
#include "meantest/linalg.hpp"
#include "meantest/rng.hpp"

namespace meantest {

/// The law sum_i lambda_i * N_i^2 for a finite (possibly truncated) list of
/// nonnegative weights. truncation_tail records the weight mass dropped when
/// an infinite spectrum was cut off; it is 0 for exact finite spectra.
struct WeightedChiSquare {
    std::vector<double> lambdas;
    double truncation_tail = 0.0;
};

/// Rank of the p-th upper order statistic among m ascending values:
/// the smallest integer >= p*m, clamped to [1, m]. The product gets a
/// tiny downward nudge before ceil() so that exact real-arithmetic
/// integers (0.9 * 1000 = 900) are not pushed up a rank by the binary
/// representation of p.
std::size_t order_stat_rank(double p, std::size_t m);

/// Sorted sample supporting CDF evaluation, order-statistic quantiles and
/// exact Kolmogorov-Smirnov distances.
class EmpiricalCdf {
  public:
    explicit EmpiricalCdf(std::vector<double> values);

    /// F(x) = #{values <= x} / size.
    double cdf(double x) const noexcept;

    /// Value at ascending rank ceil(p * size), 1-based; p must lie in (0,1).
    double quantile(double p) const;

    const std::vector<double>& values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }

  private:
    std::vector<double> values_;  // ascending
};

/// Exact sup |F_a - F_b| over the merged jump points, including the
/// left-limit plateaus between jumps.
double ks_distance(const EmpiricalCdf& a, const EmpiricalCdf& b);

/// m draws of sum_i lambda_i * N_i^2 with fresh i.i.d. standard normals.
std::vector<double> sample_weighted_chisquare(const WeightedChiSquare& model, std::size_t m,
                                              Rng& rng);

/// Spectrum of a covariance matrix as a weighted chi-square model.
/// Eigenvalues within -1e-10 * (1 + |trace|) of zero are clamped to zero;
/// anything more negative means the input is not positive semi-definite.
WeightedChiSquare limit_from_covariance(const SymmetricMatrix& gamma);

}  // namespace meantest
