#include <cmath>

#include "doctest.h"
#include "meantest/harness.hpp"
#include "meantest/report.hpp"

using namespace meantest;

namespace {

ExperimentPlan small_level_plan() {
    ExperimentPlan plan;
    plan.kind = ExperimentKind::level_study;
    plan.model.use_decay = false;
    plan.model.lambdas_explicit = {1.0, 1.0, 1.0};
    plan.truncation = {TruncationRule::Kind::fixed, 3, 0.5};
    plan.n_grid = {40};
    plan.m_datasets = 150;
    plan.b_replicates = 150;
    plan.alpha_list = {0.05, 0.2};
    plan.master_seed = 2024;
    return plan;
}

const CellRecord& find_cell(const ExperimentReport& report, const std::string& metric,
                            double alpha) {
    for (const auto& cell : report.cells)
        if (cell.metric == metric && cell.alpha.has_value() && *cell.alpha == alpha)
            return cell;
    throw std::runtime_error("cell not found");
}

}  // namespace

TEST_CASE("plan text parses fully") {
    const std::string text =
        "# comment\n"
        "kind = level_study\n"
        "lambda_c = 2.0\n"
        "lambda_gamma = 2.5\n"
        "innovation = student_t\n"
        "student_nu = 4\n"
        "truncation = power\n"
        "truncation_beta = 0.5\n"
        "n_grid = 50, 100\n"
        "m_datasets = 10\n"
        "b_replicates = 20\n"
        "alpha_list = 0.05, 0.1\n"
        "master_seed = 7\n"
        "rotate = true\n";
    const ExperimentPlan plan = parse_plan_text(text);
    CHECK(plan.kind == ExperimentKind::level_study);
    CHECK(plan.model.use_decay);
    CHECK(plan.model.decay_c == 2.0);
    CHECK(plan.model.decay_gamma == 2.5);
    CHECK(plan.model.innovation == Innovation::student_t);
    CHECK(plan.model.student_nu == 4.0);
    CHECK(plan.truncation.kind == TruncationRule::Kind::power);
    CHECK(plan.n_grid == std::vector<std::size_t>{50, 100});
    CHECK(plan.alpha_list == std::vector<double>{0.05, 0.1});
    CHECK(plan.master_seed == 7);
    CHECK(plan.rotate);
}

TEST_CASE("plan text errors name the key") {
    auto expect_error = [](const std::string& text, const std::string& needle) {
        try {
            parse_plan_text(text);
            FAIL("expected ParseError for: ", needle);
        } catch (const ParseError& e) {
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };
    const std::string base =
        "kind = level_study\nlambdas = 1,1\ntruncation = fixed\ntruncation_d = 2\n"
        "n_grid = 10\nb_replicates = 5\nalpha_list = 0.05\nmaster_seed = 1\n";

    expect_error(base + "m_datasets = 0\n", "m_datasets must be >= 1");
    expect_error(base + "m_datasets = 5\nbogus_key = 1\n", "bogus_key");
    expect_error(base + "m_datasets = 5\nkind = level_study\n", "given twice");
    expect_error(base + "m_datasets = abc\n", "m_datasets");
    expect_error("kind = nope\n" + base.substr(base.find('\n') + 1) + "m_datasets = 5\n",
                 "nope");
    expect_error(base + "m_datasets = 5\nlambda_c = 1\n",
                 "either an explicit list or lambda_c");

    // missing required key
    expect_error("kind = level_study\nlambdas = 1\ntruncation = fixed\ntruncation_d = 1\n"
                 "n_grid = 10\nm_datasets = 5\nb_replicates = 5\nmaster_seed = 1\n",
                 "alpha_list");
}

TEST_CASE("level study: nested rejection regions and ranges") {
    const ExperimentPlan plan = small_level_plan();
    const ExperimentReport report = run_plan(plan, 2);
    REQUIRE(report.cells.size() == 2);
    REQUIRE(report.failed_cells == 0);
    const CellRecord& tight = find_cell(report, "rejection_rate", 0.05);
    const CellRecord& loose = find_cell(report, "rejection_rate", 0.2);
    CHECK(tight.value >= 0.0);
    CHECK(loose.value <= 1.0);
    // Same datasets, monotone quantiles: alpha = 0.05 can only reject a
    // subset of what alpha = 0.2 rejects.
    CHECK(tight.value <= loose.value);
    CHECK(tight.d == 3);
    CHECK(tight.stderr_ >= 0.0);
}

TEST_CASE("level study on the degenerate model rejects nothing") {
    ExperimentPlan plan = small_level_plan();
    plan.model.lambdas_explicit = {0.0, 0.0, 0.0};
    plan.m_datasets = 25;
    plan.b_replicates = 50;
    const ExperimentReport report = run_plan(plan, 1);
    for (const auto& cell : report.cells) CHECK(cell.value == 0.0);
}

TEST_CASE("bootstrap_ks self-test stays at the sampling noise floor") {
    ExperimentPlan plan;
    plan.kind = ExperimentKind::bootstrap_ks;
    plan.model.use_decay = false;
    plan.model.lambdas_explicit = {1.0, 1.0};
    plan.truncation = {TruncationRule::Kind::fixed, 2, 0.5};
    plan.n_grid = {30};
    plan.m_datasets = 400;
    plan.b_replicates = 400;
    plan.omega_repeats = 4;
    plan.self_test = true;
    plan.master_seed = 99;
    const ExperimentReport report = run_plan(plan, 2);
    REQUIRE(report.cells.size() == 1);
    CHECK(report.cells[0].metric == "ks_mean_self_test");
    // 95% two-sample band: 1.36 * sqrt((m+b)/(m*b)).
    CHECK(report.cells[0].value <= 1.36 * std::sqrt(2.0 / 400.0));
}

TEST_CASE("bootstrap_ks produces a sane KS mean") {
    ExperimentPlan plan;
    plan.kind = ExperimentKind::bootstrap_ks;
    plan.model.use_decay = false;
    plan.model.lambdas_explicit = {1.0, 1.0};
    plan.truncation = {TruncationRule::Kind::fixed, 2, 0.5};
    plan.n_grid = {50};
    plan.m_datasets = 300;
    plan.b_replicates = 300;
    plan.omega_repeats = 3;
    plan.master_seed = 17;
    const ExperimentReport report = run_plan(plan, 2);
    REQUIRE(report.cells.size() == 1);
    CHECK(report.cells[0].value > 0.0);
    CHECK(report.cells[0].value < 0.5);
}

TEST_CASE("limit law: zero spectrum gives KS = 0") {
    ExperimentPlan plan;
    plan.kind = ExperimentKind::limit_law;
    plan.model.use_decay = false;
    plan.model.lambdas_explicit = {0.0};
    plan.truncation = {TruncationRule::Kind::fixed, 1, 0.5};
    plan.n_grid = {20};
    plan.m_datasets = 50;
    plan.master_seed = 5;
    const ExperimentReport report = run_plan(plan, 1);
    REQUIRE(report.cells.size() == 1);
    CHECK(report.cells[0].value == 0.0);
}

TEST_CASE("limit law: heavy-tailed data approach the truncated law as n grows") {
    // Student-t(3) innovations converge slowly enough for the trend to be
    // visible above the two-sample noise floor (fixed seeds).
    ExperimentPlan plan;
    plan.kind = ExperimentKind::limit_law;
    plan.model.use_decay = true;
    plan.model.decay_c = 1.0;
    plan.model.decay_gamma = 2.0;
    plan.model.innovation = Innovation::student_t;
    plan.model.student_nu = 3.0;
    plan.truncation = {TruncationRule::Kind::power, 1, 0.5};
    plan.n_grid = {100, 400, 1600};
    plan.m_datasets = 1500;
    plan.master_seed = 31;
    const ExperimentReport report = run_plan(plan, 2);
    REQUIRE(report.cells.size() == 3);
    CHECK(report.cells[0].d == 10);
    CHECK(report.cells[1].d == 20);
    CHECK(report.cells[2].d == 40);
    CHECK(report.cells[2].value < report.cells[0].value);
    CHECK(report.cells[1].value <= report.cells[0].value);
}

TEST_CASE("diagnostics sweep aggregates, and an oversized projection fails the cell") {
    ExperimentPlan plan;
    plan.kind = ExperimentKind::diagnostics_sweep;
    plan.model.use_decay = false;
    plan.model.lambdas_explicit = {1.0, 1.0, 1.0};
    plan.truncation = {TruncationRule::Kind::power, 1, 0.5};
    plan.n_grid = {100, 400};  // d = 10 and 20
    plan.m_datasets = 20;
    plan.eps_grid = {0.5, 1.0};
    plan.l_projection = 15;  // fits d=20 but not d=10
    plan.master_seed = 12;
    const ExperimentReport report = run_plan(plan, 2);
    CHECK(report.failed_cells == 1);
    bool found_error = false, found_trace = false;
    for (const auto& cell : report.cells) {
        if (cell.error.has_value()) {
            found_error = true;
            CHECK(cell.n == 100);
            CHECK(std::isnan(cell.value));
        }
        if (cell.metric == "trace_sum_mean" && cell.n == 400) {
            found_trace = true;
            // Mean trace over datasets sits within 4 reported standard
            // errors of the model trace (3 unit weights).
            CHECK(std::abs(cell.value - 3.0) <= 4.0 * cell.stderr_);
        }
    }
    CHECK(found_error);
    CHECK(found_trace);
}

TEST_CASE("diagnostics sweep: bounded innovations zero the whole grid") {
    ExperimentPlan plan;
    plan.kind = ExperimentKind::diagnostics_sweep;
    plan.model.use_decay = false;
    plan.model.lambdas_explicit = {1.0, 1.0};
    plan.model.innovation = Innovation::rademacher;
    plan.truncation = {TruncationRule::Kind::fixed, 2, 0.5};
    plan.n_grid = {200};  // eps*sqrt(n) >= 7 > 2*sqrt(2): nothing can fire
    plan.m_datasets = 10;
    plan.eps_grid = {0.5, 1.0, 2.0};
    plan.master_seed = 21;
    const ExperimentReport report = run_plan(plan, 2);
    for (const auto& cell : report.cells)
        if (cell.metric == "lindeberg_mean") CHECK(cell.value == 0.0);
}

TEST_CASE("reports round-trip byte-identically") {
    ExperimentPlan plan = small_level_plan();
    plan.m_datasets = 30;
    plan.b_replicates = 40;
    const ExperimentReport report = run_plan(plan, 2);
    const std::string once = experiment_report_to_json(report);
    const std::string twice = experiment_report_to_json(experiment_report_from_json(once));
    CHECK(once == twice);

    const std::string csv = experiment_report_to_csv(report);
    CHECK(csv.rfind("n,d,alpha,eps,metric,value,stderr,wall_time_ms,error\n", 0) == 0);
    std::size_t lines = 0;
    for (char c : csv)
        if (c == '\n') ++lines;
    CHECK(lines == report.cells.size() + 1);
}

TEST_CASE("experiments are bit-reproducible across worker counts") {
    for (ExperimentKind kind :
         {ExperimentKind::level_study, ExperimentKind::bootstrap_ks,
          ExperimentKind::limit_law, ExperimentKind::diagnostics_sweep}) {
        ExperimentPlan plan = small_level_plan();
        plan.kind = kind;
        plan.m_datasets = 40;
        plan.b_replicates = 50;
        plan.omega_repeats = 3;
        const std::string one =
            experiment_report_to_json(run_plan(plan, 1), /*include_timing=*/false);
        const std::string four =
            experiment_report_to_json(run_plan(plan, 4), /*include_timing=*/false);
        CHECK(one == four);
    }
}

TEST_CASE("rotation keeps the level study honest") {
    ExperimentPlan plan = small_level_plan();
    plan.rotate = true;
    plan.m_datasets = 100;
    plan.b_replicates = 100;
    const ExperimentReport report = run_plan(plan, 2);
    const CellRecord& cell = find_cell(report, "rejection_rate", 0.05);
    CHECK(cell.value < 0.3);  // smoke: rotation must not break the null
}

TEST_CASE("mean shift turns the level study into a power study") {
    ExperimentPlan plan = small_level_plan();
    plan.model.mean_shift = MeanShift{1.5, {1.0, 0.0, 0.0}};
    plan.m_datasets = 60;
    plan.b_replicates = 100;
    const ExperimentReport report = run_plan(plan, 2);
    const CellRecord& cell = find_cell(report, "rejection_rate", 0.05);
    CHECK(cell.value > 0.5);  // n=40, shift 1.5: power should be high
}

TEST_CASE("plan validation") {
    ExperimentPlan plan = small_level_plan();
    plan.alpha_list = {0.5, 1.2};
    CHECK_THROWS_AS(plan.validate(), InvalidArgument);
    plan = small_level_plan();
    plan.n_grid.clear();
    CHECK_THROWS_AS(plan.validate(), InvalidArgument);
    plan = small_level_plan();
    plan.eps_grid = {0.0};
    CHECK_THROWS_AS(plan.validate(), InvalidArgument);
}
