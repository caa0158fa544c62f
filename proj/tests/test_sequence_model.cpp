#include <cmath>

#include "doctest.h"
#include "meantest/diagnostics.hpp"
#include "meantest/sequence_model.hpp"
#include "meantest/statistic.hpp"
#include "test_support.hpp"

using namespace meantest;

namespace {

double norm(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

SpectralModel ones_model(std::size_t d) {
    SpectralModel m;
    m.use_decay = false;
    m.lambdas_explicit.assign(d, 1.0);
    return m;
}

}  // namespace

TEST_CASE("dn_of rules") {
    TruncationRule fixed{TruncationRule::Kind::fixed, 7, 0.5};
    CHECK(dn_of(fixed, 1000) == 7);

    TruncationRule power{TruncationRule::Kind::power, 1, 0.5};
    CHECK(dn_of(power, 100) == 10);
    CHECK(dn_of(power, 2) == 1);

    TruncationRule log{TruncationRule::Kind::log2, 1, 0.5};
    CHECK(dn_of(log, 1024) == 10);
    CHECK(dn_of(log, 1) == 1);
    CHECK(dn_of(log, 3) == 1);
}

TEST_CASE("truncate, embed, project") {
    const std::vector<double> x{1.0, 2.0, 3.0, 4.0};
    CHECK(truncate(x, 2) == std::vector<double>{1.0, 2.0});
    CHECK(truncate(x, 6) == std::vector<double>{1.0, 2.0, 3.0, 4.0, 0.0, 0.0});

    const std::vector<double> v{1.0, 2.0};
    CHECK(embed(v, 4) == std::vector<double>{1.0, 2.0, 0.0, 0.0});
    CHECK_THROWS_AS(embed(x, 2), DimensionMismatch);

    CHECK(project(x, 2) == std::vector<double>{1.0, 2.0, 0.0, 0.0});
    CHECK(project(project(x, 2), 2) == project(x, 2));
}

TEST_CASE("projection norm identities") {
    Rng rng(61);
    for (int rep = 0; rep < 30; ++rep) {
        std::vector<double> x(1 + rng.uniform_below(20));
        for (double& v : x) v = rng.gaussian();
        const std::size_t l = 1 + rng.uniform_below(x.size() + 5);

        const std::vector<double> padded = embed(x, x.size() + rng.uniform_below(10));
        CHECK(std::abs(norm(padded) - norm(x)) <= 1e-12 * (1.0 + norm(x)));

        CHECK(norm(truncate(x, l)) <= norm(x) * (1.0 + 1e-15) + 1e-300);

        const std::vector<double> once = project(x, l);
        CHECK(project(once, l) == once);
    }
}

TEST_CASE("model validation") {
    SpectralModel m;
    m.use_decay = true;
    m.decay_gamma = 1.0;
    CHECK_THROWS_AS(m.validate(), InvalidModel);
    m.decay_gamma = 2.0;
    m.decay_c = 0.0;
    CHECK_THROWS_AS(m.validate(), InvalidModel);
    m.decay_c = 1.0;
    m.innovation = Innovation::student_t;
    m.student_nu = 2.5;
    CHECK_THROWS_AS(m.validate(), InvalidModel);
    m.student_nu = 3.0;
    CHECK_NOTHROW(m.validate());

    SpectralModel bad;
    bad.use_decay = false;
    bad.lambdas_explicit = {1.0, -0.5};
    CHECK_THROWS_AS(bad.validate(), InvalidModel);

    Rng rng(1);
    CHECK_THROWS_AS(generate_sample(m, 0, 3, rng), InvalidArgument);
}

TEST_CASE("lambda helpers") {
    SpectralModel m;  // defaults: decay c=1 gamma=2
    CHECK(m.lambda(0) == 1.0);
    CHECK(m.lambda(1) == doctest::Approx(0.25));
    CHECK(m.lambda(2) == doctest::Approx(1.0 / 9.0));
    CHECK(m.lambda_prefix_sum(3) == doctest::Approx(1.0 + 0.25 + 1.0 / 9.0));
    // Tail of sum k^-2 beyond d: compare with pi^2/6 - prefix.
    const double total = M_PI * M_PI / 6.0;
    CHECK(m.lambda_tail(3) == doctest::Approx(total - m.lambda_prefix_sum(3)).epsilon(1e-9));

    SpectralModel e = ones_model(3);
    CHECK(e.lambda(2) == 1.0);
    CHECK(e.lambda(3) == 0.0);
    CHECK(e.lambda_tail(2) == 1.0);
}

TEST_CASE("generate_sample zero spectrum is identically zero") {
    SpectralModel m;
    m.use_decay = false;
    m.lambdas_explicit = {0.0, 0.0};
    Rng rng(3);
    const Sample s = generate_sample(m, 5, 2, rng);
    for (std::size_t i = 0; i < s.n(); ++i)
        for (std::size_t k = 0; k < s.d(); ++k) CHECK(s.row(i)[k] == 0.0);
}

TEST_CASE("generate_sample identity covariance") {
    Rng rng(5);
    const Sample s = generate_sample(ones_model(4), 20000, 4, rng);
    const SymmetricMatrix cov = sample_covariance_biased(s);
    for (std::size_t k = 0; k < 4; ++k)
        for (std::size_t l = 0; l < 4; ++l)
            CHECK(std::abs(cov(k, l) - (k == l ? 1.0 : 0.0)) < 0.05);
}

TEST_CASE("generate_sample decay covariance matches the rule") {
    SpectralModel m;  // c=1, gamma=2 -> diag(1, 1/4, 1/9)
    Rng rng(7);
    const Sample s = generate_sample(m, 100000, 3, rng);
    const SymmetricMatrix cov = sample_covariance_biased(s);
    const double expected[3] = {1.0, 0.25, 1.0 / 9.0};
    for (std::size_t k = 0; k < 3; ++k)
        for (std::size_t l = 0; l < 3; ++l)
            CHECK(std::abs(cov(k, l) - (k == l ? expected[k] : 0.0)) < 0.02);
}

TEST_CASE("E[V_n] equals the truncated trace under the null") {
    // V ~ n ||mean||^2 with E[V] = sum_{k<=d} lambda_k; average over many
    // datasets and compare within 4 standard errors (V ~ chi2_5 here, so
    // var = 10).
    const SpectralModel m = ones_model(5);
    const std::size_t datasets = 10000;
    double sum = 0.0;
    for (std::size_t j = 0; j < datasets; ++j) {
        Rng rng(derive(424242, j));
        sum += v_statistic(generate_sample(m, 20, 5, rng));
    }
    const double avg = sum / static_cast<double>(datasets);
    const double se = std::sqrt(10.0 / static_cast<double>(datasets));
    CHECK(std::abs(avg - 5.0) <= 4.0 * se);
}

TEST_CASE("rademacher rows are bounded and kill the Lindeberg term") {
    SpectralModel m = ones_model(4);
    m.innovation = Innovation::rademacher;
    Rng rng(11);
    const Sample s = generate_sample(m, 100, 4, rng);
    for (std::size_t i = 0; i < s.n(); ++i)
        for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(s.row(i)[k]) == 1.0);

    // ||x_i - xbar|| <= 2 * sqrt(sum lambda) = 4; with eps = 1 and n = 100
    // the threshold eps * sqrt(n) = 10 can never fire.
    CHECK(lindeberg_term(s, 1.0) == 0.0);
}

TEST_CASE("student innovations are variance standardized") {
    SUBCASE("nu = 5") {
        SpectralModel m = ones_model(1);
        m.innovation = Innovation::student_t;
        m.student_nu = 5.0;
        Rng rng(13);
        double sum = 0.0, ssq = 0.0;
        const std::size_t reps = 1000000;
        for (std::size_t i = 0; i < reps; ++i) {
            const double x = draw_innovation(m, rng);
            sum += x;
            ssq += x * x;
        }
        const double mean = sum / static_cast<double>(reps);
        const double var = ssq / static_cast<double>(reps) - mean * mean;
        CHECK(std::abs(mean) < 0.01);
        CHECK(std::abs(var - 1.0) < 0.02);
    }
    SUBCASE("nu = 3 (infinite kurtosis, loose band, fixed seed)") {
        SpectralModel m = ones_model(1);
        m.innovation = Innovation::student_t;
        m.student_nu = 3.0;
        Rng rng(17);
        double ssq = 0.0;
        const std::size_t reps = 1000000;
        for (std::size_t i = 0; i < reps; ++i) {
            const double x = draw_innovation(m, rng);
            ssq += x * x;
        }
        CHECK(std::abs(ssq / static_cast<double>(reps) - 1.0) < 0.15);
    }
}

TEST_CASE("mean shift moves the sample mean") {
    SpectralModel m = ones_model(3);
    m.mean_shift = MeanShift{2.0, {1.0, 0.0, 0.0}};
    Rng rng(19);
    const Sample s = generate_sample(m, 40000, 3, rng);
    const std::vector<double> mu = mean(s);
    CHECK(std::abs(mu[0] - 2.0) < 0.05);
    CHECK(std::abs(mu[1]) < 0.05);
    CHECK(std::abs(mu[2]) < 0.05);

    // Direction gets normalized: a scaled direction gives the same mean.
    SpectralModel m2 = ones_model(3);
    m2.mean_shift = MeanShift{2.0, {10.0, 0.0, 0.0}};
    CHECK(m2.mean_vector(3) == m.mean_vector(3));
}
