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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "meantest/linalg.hpp"
#include "meantest/rng.hpp"

namespace meantest {

enum class Innovation { gaussian, rademacher, student_t };

/// Mean under the alternative: delta times the unit direction e (coordinates
/// beyond the stored prefix are zero).
struct MeanShift {
    double delta = 0.0;
    std::vector<double> direction;  // normalized to unit l2 norm on validate
};

/// Square-summable diagonal covariance model: coordinate k of an
/// observation is mu_k + sqrt(lambda_k) * eps, with eps i.i.d. mean-0
/// variance-1 innovations. The spectrum is either the decay rule
/// lambda_k = c * k^-gamma (k starting at 1, gamma > 1 so the trace is
/// finite) or an explicit finite list (zero beyond the end).
struct SpectralModel {
    bool use_decay = true;
    double decay_c = 1.0;
    double decay_gamma = 2.0;
    std::vector<double> lambdas_explicit;

    Innovation innovation = Innovation::gaussian;
    double student_nu = 5.0;  // only read for student_t; variance-standardized

    std::optional<MeanShift> mean_shift;

    void validate() const;

    /// lambda_k, 0-based index.
    double lambda(std::size_t k) const;
    /// First d weights.
    std::vector<double> lambda_head(std::size_t d) const;
    /// sum_{k <= d} lambda_k (0-based: indices 0..d-1).
    double lambda_prefix_sum(std::size_t d) const;
    /// Mass beyond the first d weights; for the decay rule this is the
    /// partial sum out to d + 10^5 terms plus a midpoint-integral remainder.
    double lambda_tail(std::size_t d) const;
    /// Mean vector truncated to d coordinates.
    std::vector<double> mean_vector(std::size_t d) const;
};

/// How the observed dimension grows with the sample size.
struct TruncationRule {
    enum class Kind { fixed, power, log2 };
    Kind kind = Kind::fixed;
    std::size_t fixed_d = 1;      // fixed(d)
    double power_beta = 0.5;      // d_n = max(1, floor(n^beta))

    void validate() const;
};

std::size_t dn_of(const TruncationRule& rule, std::size_t n);

/// n observations of the first d coordinates of the model; coordinates are
/// independent across k (diagonal covariance by construction).
Sample generate_sample(const SpectralModel& model, std::size_t n, std::size_t d, Rng& rng);

/// First l coordinates (zero-padded if x is shorter).
std::vector<double> truncate(std::span<const double> x, std::size_t l);

/// Zero-pad v up to target_len; norm-preserving.
std::vector<double> embed(std::span<const double> v, std::size_t target_len);

/// Orthogonal projection onto the first l coordinates: truncate, then embed
/// back to the original length. Idempotent and norm-nonincreasing.
std::vector<double> project(std::span<const double> x, std::size_t l);

/// Innovation draw (mean 0, variance 1) for a validated model.
double draw_innovation(const SpectralModel& model, Rng& rng);

}  // namespace meantest
