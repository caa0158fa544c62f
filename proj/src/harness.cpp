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

#include "meantest/harness.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "meantest/limit_dist.hpp"
#include "meantest/parallel.hpp"
#include "meantest/statistic.hpp"
#include "meantest/version.hpp"

namespace meantest {

namespace {

// Words mixed into the seed chain. Kind and role tags keep the streams of
// different uses of the same (n, dataset) cell apart.
enum Role : std::uint64_t {
    kRoleData = 0x0A,
    kRoleTest = 0x0B,
    kRoleTruth = 0x0C,
    kRoleOmega = 0x0D,
    kRoleBoot = 0x0E,
    kRoleLimit = 0x0F,
    kRoleRotation = 0x10,
    kRoleSelfTest = 0x11,
};

std::uint64_t kind_word(ExperimentKind kind) noexcept {
    return static_cast<std::uint64_t>(kind) + 1;
}

std::uint64_t cell_seed(const ExperimentPlan& plan, std::size_t n_idx, std::size_t unit,
                        Role role) noexcept {
    std::uint64_t s = derive(plan.master_seed, kind_word(plan.kind));
    s = derive(s, n_idx);
    s = derive(s, unit);
    return derive(s, role);
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

struct CellError {
    bool failed = false;
    std::string message;

    void record(const std::exception& e) {
        if (!failed) {
            failed = true;
            message = e.what();
        }
    }
};

// Mean and standard error of the mean over stored per-unit values.
std::pair<double, double> mean_and_se(const std::vector<double>& values) {
    const std::size_t m = values.size();
    double sum = 0.0;
    for (double v : values) sum += v;
    const double mu = sum / static_cast<double>(m);
    if (m < 2) return {mu, 0.0};
    double ssq = 0.0;
    for (double v : values) ssq += (v - mu) * (v - mu);
    const double sd = std::sqrt(ssq / static_cast<double>(m - 1));
    return {mu, sd / std::sqrt(static_cast<double>(m))};
}

Sample generate_cell_sample(const ExperimentPlan& plan, const std::optional<Matrix>& rotation,
                            std::size_t n, std::size_t d, std::uint64_t seed) {
    Rng rng(seed);
    Sample s = generate_sample(plan.model, n, d, rng);
    if (rotation.has_value()) return rotate_rows(s, *rotation);
    return s;
}

std::optional<Matrix> cell_rotation(const ExperimentPlan& plan, std::size_t n_idx,
                                    std::size_t d) {
    if (!plan.rotate) return std::nullopt;
    Rng rng(cell_seed(plan, n_idx, 0, kRoleRotation));
    return haar_orthogonal(d, rng);
}

void emit(const ProgressFn& progress, const std::string& line) {
    if (progress) progress(line);
}

}  // namespace

const char* to_string(ExperimentKind kind) noexcept {
    switch (kind) {
        case ExperimentKind::level_study: return "level_study";
        case ExperimentKind::bootstrap_ks: return "bootstrap_ks";
        case ExperimentKind::limit_law: return "limit_law";
        case ExperimentKind::diagnostics_sweep: return "diagnostics_sweep";
    }
    return "unknown";
}

ExperimentKind experiment_kind_from_string(const std::string& s) {
    if (s == "level_study") return ExperimentKind::level_study;
    if (s == "bootstrap_ks") return ExperimentKind::bootstrap_ks;
    if (s == "limit_law") return ExperimentKind::limit_law;
    if (s == "diagnostics_sweep") return ExperimentKind::diagnostics_sweep;
    throw ParseError("kind: unknown experiment kind '" + s + "'");
}

void ExperimentPlan::validate() const {
    model.validate();
    truncation.validate();
    if (n_grid.empty()) throw InvalidArgument("n_grid must be nonempty");
    for (std::size_t n : n_grid)
        if (n < 1) throw InvalidArgument("n_grid entries must be >= 1");
    if (m_datasets < 1) throw InvalidArgument("m_datasets must be >= 1");
    if (b_replicates < 1) throw InvalidArgument("b_replicates must be >= 1");
    if (alpha_list.empty()) throw InvalidArgument("alpha_list must be nonempty");
    for (double a : alpha_list)
        if (!(a > 0.0 && a < 1.0)) throw InvalidArgument("alpha_list entries must lie in (0,1)");
    if (omega_repeats < 1) throw InvalidArgument("omega_repeats must be >= 1");
    for (double e : eps_grid)
        if (!(e > 0.0)) throw InvalidArgument("eps_grid entries must be > 0");
}

ExperimentReport run_level_study(const ExperimentPlan& plan, unsigned threads,
                                 const ProgressFn& progress) {
    plan.validate();
    ExperimentReport report{version_string, plan, {}, 0};

    for (std::size_t n_idx = 0; n_idx < plan.n_grid.size(); ++n_idx) {
        const std::size_t n = plan.n_grid[n_idx];
        const std::size_t d = dn_of(plan.truncation, n);
        const auto rotation = cell_rotation(plan, n_idx, d);
        const auto start = std::chrono::steady_clock::now();

        const std::size_t n_alpha = plan.alpha_list.size();
        std::vector<std::uint8_t> rejected(plan.m_datasets * n_alpha, 0);
        CellError err;

        parallel_for(plan.m_datasets, threads, [&](std::size_t j) {
            try {
                const Sample sample = generate_cell_sample(
                    plan, rotation, n, d, cell_seed(plan, n_idx, j, kRoleData));
                const double v = v_statistic(sample);
                const std::vector<double> reps = bootstrap_replicates(
                    sample, plan.b_replicates, cell_seed(plan, n_idx, j, kRoleTest), 1);
                const EmpiricalCdf cdf{std::vector<double>(reps)};
                for (std::size_t a = 0; a < n_alpha; ++a)
                    rejected[j * n_alpha + a] =
                        v > cdf.quantile(1.0 - plan.alpha_list[a]) ? 1 : 0;
            } catch (const std::exception& e) {
                err.record(e);
            }
        });

        const double wall = elapsed_ms(start);
        for (std::size_t a = 0; a < n_alpha; ++a) {
            CellRecord cell;
            cell.n = n;
            cell.d = d;
            cell.alpha = plan.alpha_list[a];
            cell.metric = "rejection_rate";
            cell.wall_time_ms = wall;
            if (err.failed) {
                cell.value = std::nan("");
                cell.error = err.message;
                ++report.failed_cells;
            } else {
                std::size_t hits = 0;
                for (std::size_t j = 0; j < plan.m_datasets; ++j)
                    hits += rejected[j * n_alpha + a];
                const double rate =
                    static_cast<double>(hits) / static_cast<double>(plan.m_datasets);
                cell.value = rate;
                cell.stderr_ = std::sqrt(rate * (1.0 - rate) /
                                         static_cast<double>(plan.m_datasets));
            }
            report.cells.push_back(std::move(cell));
        }
        std::ostringstream line;
        line << "[level_study] n=" << n << " d=" << d << " done (" << wall / 1000.0 << " s)";
        emit(progress, line.str());
    }
    return report;
}

ExperimentReport run_bootstrap_ks(const ExperimentPlan& plan, unsigned threads,
                                  const ProgressFn& progress) {
    plan.validate();
    ExperimentReport report{version_string, plan, {}, 0};

    for (std::size_t n_idx = 0; n_idx < plan.n_grid.size(); ++n_idx) {
        const std::size_t n = plan.n_grid[n_idx];
        const std::size_t d = dn_of(plan.truncation, n);
        const auto rotation = cell_rotation(plan, n_idx, d);
        const auto start = std::chrono::steady_clock::now();
        CellError err;

        // Truth column: the statistic on fresh datasets.
        std::vector<double> truth_values(plan.m_datasets, 0.0);
        parallel_for(plan.m_datasets, threads, [&](std::size_t j) {
            try {
                const Sample sample = generate_cell_sample(
                    plan, rotation, n, d, cell_seed(plan, n_idx, j, kRoleTruth));
                truth_values[j] = v_statistic(sample);
            } catch (const std::exception& e) {
                err.record(e);
            }
        });

        std::vector<double> ks_values(plan.omega_repeats, 0.0);
        if (!err.failed) {
            const EmpiricalCdf truth_cdf{std::move(truth_values)};
            parallel_for(plan.omega_repeats, threads, [&](std::size_t w) {
                try {
                    const Sample sample = generate_cell_sample(
                        plan, rotation, n, d, cell_seed(plan, n_idx, w, kRoleOmega));
                    std::vector<double> column;
                    if (plan.self_test) {
                        // Fresh datasets through the identical generator; the
                        // KS value then only measures sampling noise.
                        column.resize(plan.b_replicates);
                        const std::uint64_t base = cell_seed(plan, n_idx, w, kRoleSelfTest);
                        for (std::size_t b = 0; b < plan.b_replicates; ++b) {
                            const Sample fresh =
                                generate_cell_sample(plan, rotation, n, d, derive(base, b));
                            column[b] = v_statistic(fresh);
                        }
                    } else {
                        column = bootstrap_replicates(sample, plan.b_replicates,
                                                      cell_seed(plan, n_idx, w, kRoleBoot), 1);
                    }
                    ks_values[w] = ks_distance(EmpiricalCdf{std::move(column)}, truth_cdf);
                } catch (const std::exception& e) {
                    err.record(e);
                }
            });
        }

        const double wall = elapsed_ms(start);
        CellRecord cell;
        cell.n = n;
        cell.d = d;
        cell.metric = plan.self_test ? "ks_mean_self_test" : "ks_mean";
        cell.wall_time_ms = wall;
        if (err.failed) {
            cell.value = std::nan("");
            cell.error = err.message;
            ++report.failed_cells;
        } else {
            const auto [mu, se] = mean_and_se(ks_values);
            cell.value = mu;
            cell.stderr_ = se;
        }
        report.cells.push_back(std::move(cell));
        std::ostringstream line;
        line << "[bootstrap_ks] n=" << n << " d=" << d << " done (" << wall / 1000.0 << " s)";
        emit(progress, line.str());
    }
    return report;
}

ExperimentReport run_limit_law(const ExperimentPlan& plan, unsigned threads,
                               const ProgressFn& progress) {
    plan.validate();
    ExperimentReport report{version_string, plan, {}, 0};

    for (std::size_t n_idx = 0; n_idx < plan.n_grid.size(); ++n_idx) {
        const std::size_t n = plan.n_grid[n_idx];
        const std::size_t d = dn_of(plan.truncation, n);
        const auto rotation = cell_rotation(plan, n_idx, d);
        const auto start = std::chrono::steady_clock::now();
        CellError err;

        std::vector<double> statistic_values(plan.m_datasets, 0.0);
        parallel_for(plan.m_datasets, threads, [&](std::size_t j) {
            try {
                const Sample sample = generate_cell_sample(
                    plan, rotation, n, d, cell_seed(plan, n_idx, j, kRoleData));
                statistic_values[j] = v_statistic(sample);
            } catch (const std::exception& e) {
                err.record(e);
            }
        });

        const double wall_seed = elapsed_ms(start);
        CellRecord cell;
        cell.n = n;
        cell.d = d;
        cell.metric = "ks";
        if (err.failed) {
            cell.value = std::nan("");
            cell.error = err.message;
            cell.wall_time_ms = wall_seed;
            ++report.failed_cells;
        } else {
            // Reference: the limit law truncated at the observed dimension.
            // The rotation does not enter -- eigenvalues are rotation
            // invariant.
            WeightedChiSquare limit{plan.model.lambda_head(d), plan.model.lambda_tail(d)};
            Rng rng(cell_seed(plan, n_idx, 0, kRoleLimit));
            std::vector<double> reference =
                sample_weighted_chisquare(limit, plan.m_datasets, rng);
            cell.value = ks_distance(EmpiricalCdf{std::move(statistic_values)},
                                     EmpiricalCdf{std::move(reference)});
            const double m = static_cast<double>(plan.m_datasets);
            cell.stderr_ = std::sqrt((m + m) / (m * m));  // two-sample KS scale
            cell.wall_time_ms = elapsed_ms(start);
        }
        const double wall = cell.wall_time_ms;
        report.cells.push_back(std::move(cell));
        std::ostringstream line;
        line << "[limit_law] n=" << n << " d=" << d << " done (" << wall / 1000.0 << " s)";
        emit(progress, line.str());
    }
    return report;
}

ExperimentReport run_diagnostics_sweep(const ExperimentPlan& plan, unsigned threads,
                                       const ProgressFn& progress) {
    plan.validate();
    ExperimentReport report{version_string, plan, {}, 0};
    const std::vector<double> grid =
        plan.eps_grid.empty() ? default_eps_grid() : plan.eps_grid;

    for (std::size_t n_idx = 0; n_idx < plan.n_grid.size(); ++n_idx) {
        const std::size_t n = plan.n_grid[n_idx];
        const std::size_t d = dn_of(plan.truncation, n);
        const auto rotation = cell_rotation(plan, n_idx, d);
        const auto start = std::chrono::steady_clock::now();
        CellError err;

        std::vector<std::vector<double>> lindeberg(plan.m_datasets);
        std::vector<double> traces(plan.m_datasets, 0.0);
        std::vector<double> sorted_grid = grid;
        std::sort(sorted_grid.begin(), sorted_grid.end());

        parallel_for(plan.m_datasets, threads, [&](std::size_t j) {
            try {
                const Sample sample = generate_cell_sample(
                    plan, rotation, n, d, cell_seed(plan, n_idx, j, kRoleData));
                const DiagnosticsReport diag =
                    full_report(sample, sorted_grid, plan.l_projection == 0
                                                         ? d
                                                         : plan.l_projection);
                lindeberg[j].reserve(diag.lindeberg.size());
                for (const auto& [eps, value] : diag.lindeberg) lindeberg[j].push_back(value);
                traces[j] = diag.trace_sum;
            } catch (const std::exception& e) {
                err.record(e);
            }
        });

        const double wall = elapsed_ms(start);
        if (err.failed) {
            CellRecord cell;
            cell.n = n;
            cell.d = d;
            cell.metric = "diagnostics";
            cell.value = std::nan("");
            cell.wall_time_ms = wall;
            cell.error = err.message;
            ++report.failed_cells;
            report.cells.push_back(std::move(cell));
        } else {
            for (std::size_t g = 0; g < sorted_grid.size(); ++g) {
                std::vector<double> values(plan.m_datasets);
                for (std::size_t j = 0; j < plan.m_datasets; ++j) values[j] = lindeberg[j][g];
                const auto [mu, se] = mean_and_se(values);
                CellRecord cell;
                cell.n = n;
                cell.d = d;
                cell.eps = sorted_grid[g];
                cell.metric = "lindeberg_mean";
                cell.value = mu;
                cell.stderr_ = se;
                cell.wall_time_ms = wall;
                report.cells.push_back(std::move(cell));
            }
            const auto [mu, se] = mean_and_se(traces);
            CellRecord cell;
            cell.n = n;
            cell.d = d;
            cell.metric = "trace_sum_mean";
            cell.value = mu;
            cell.stderr_ = se;
            cell.wall_time_ms = wall;
            report.cells.push_back(std::move(cell));
        }
        std::ostringstream line;
        line << "[diagnostics_sweep] n=" << n << " d=" << d << " done (" << wall / 1000.0
             << " s)";
        emit(progress, line.str());
    }
    return report;
}

ExperimentReport run_plan(const ExperimentPlan& plan, unsigned threads,
                          const ProgressFn& progress) {
    switch (plan.kind) {
        case ExperimentKind::level_study: return run_level_study(plan, threads, progress);
        case ExperimentKind::bootstrap_ks: return run_bootstrap_ks(plan, threads, progress);
        case ExperimentKind::limit_law: return run_limit_law(plan, threads, progress);
        case ExperimentKind::diagnostics_sweep:
            return run_diagnostics_sweep(plan, threads, progress);
    }
    throw InvalidArgument("unknown experiment kind");
}

// ---------------------------------------------------------------------------
// Plan files: flat "key = value" lines, '#' comments, comma-separated lists.

namespace {

class PlanKeys {
  public:
    explicit PlanKeys(const std::string& text) {
        std::istringstream in(text);
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            std::string_view sv = trim(line);
            if (sv.empty()) continue;
            const auto eq = sv.find('=');
            if (eq == std::string_view::npos)
                throw ParseError("plan line " + std::to_string(line_no) +
                                 ": expected 'key = value'");
            const std::string key{trim(sv.substr(0, eq))};
            const std::string value{trim(sv.substr(eq + 1))};
            if (key.empty())
                throw ParseError("plan line " + std::to_string(line_no) + ": empty key");
            if (!entries_.emplace(key, value).second)
                throw ParseError("plan key '" + key + "' given twice");
        }
    }

    bool has(const std::string& key) const { return entries_.count(key) != 0; }

    std::string take(const std::string& key) {
        const auto it = entries_.find(key);
        if (it == entries_.end()) throw ParseError("missing required plan key '" + key + "'");
        std::string value = it->second;
        entries_.erase(it);
        return value;
    }

    std::optional<std::string> take_optional(const std::string& key) {
        const auto it = entries_.find(key);
        if (it == entries_.end()) return std::nullopt;
        std::string value = it->second;
        entries_.erase(it);
        return value;
    }

    void expect_empty() const {
        if (!entries_.empty())
            throw ParseError("unknown plan key '" + entries_.begin()->first + "'");
    }

  private:
    static std::string_view trim(std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
            s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
            s.remove_suffix(1);
        return s;
    }

    std::map<std::string, std::string> entries_;
};

double parse_double_value(const std::string& key, const std::string& text) {
    double v;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last)
        throw ParseError(key + ": '" + text + "' is not a number");
    return v;
}

std::uint64_t parse_uint_value(const std::string& key, const std::string& text) {
    std::uint64_t v;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last)
        throw ParseError(key + ": '" + text + "' is not a nonnegative integer");
    return v;
}

bool parse_bool_value(const std::string& key, const std::string& text) {
    if (text == "true" || text == "1") return true;
    if (text == "false" || text == "0") return false;
    throw ParseError(key + ": '" + text + "' is not a boolean (true/false)");
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> parts;
    std::string current;
    std::istringstream in(text);
    while (std::getline(in, current, ',')) {
        const auto b = current.find_first_not_of(" \t");
        const auto e = current.find_last_not_of(" \t");
        parts.push_back(b == std::string::npos ? "" : current.substr(b, e - b + 1));
    }
    return parts;
}

std::vector<double> parse_double_list(const std::string& key, const std::string& text) {
    std::vector<double> values;
    for (const auto& part : split_list(text)) values.push_back(parse_double_value(key, part));
    if (values.empty()) throw ParseError(key + ": empty list");
    return values;
}

std::vector<std::size_t> parse_uint_list(const std::string& key, const std::string& text) {
    std::vector<std::size_t> values;
    for (const auto& part : split_list(text))
        values.push_back(static_cast<std::size_t>(parse_uint_value(key, part)));
    if (values.empty()) throw ParseError(key + ": empty list");
    return values;
}

}  // namespace

ExperimentPlan parse_plan_text(const std::string& text) {
    PlanKeys keys(text);
    ExperimentPlan plan;

    plan.kind = experiment_kind_from_string(keys.take("kind"));

    // Spectrum: either an explicit list or the decay rule.
    if (keys.has("lambdas")) {
        if (keys.has("lambda_c") || keys.has("lambda_gamma"))
            throw ParseError("lambdas: give either an explicit list or lambda_c/lambda_gamma");
        plan.model.use_decay = false;
        plan.model.lambdas_explicit = parse_double_list("lambdas", keys.take("lambdas"));
    } else {
        plan.model.use_decay = true;
        if (auto c = keys.take_optional("lambda_c"))
            plan.model.decay_c = parse_double_value("lambda_c", *c);
        if (auto g = keys.take_optional("lambda_gamma"))
            plan.model.decay_gamma = parse_double_value("lambda_gamma", *g);
    }

    if (auto innovation = keys.take_optional("innovation")) {
        if (*innovation == "gaussian")
            plan.model.innovation = Innovation::gaussian;
        else if (*innovation == "rademacher")
            plan.model.innovation = Innovation::rademacher;
        else if (*innovation == "student_t")
            plan.model.innovation = Innovation::student_t;
        else
            throw ParseError("innovation: unknown law '" + *innovation + "'");
    }
    if (auto nu = keys.take_optional("student_nu"))
        plan.model.student_nu = parse_double_value("student_nu", *nu);

    if (auto delta = keys.take_optional("shift_delta")) {
        MeanShift shift;
        shift.delta = parse_double_value("shift_delta", *delta);
        if (auto dir = keys.take_optional("shift_direction"))
            shift.direction = parse_double_list("shift_direction", *dir);
        else if (shift.delta != 0.0)
            throw ParseError("shift_direction is required when shift_delta != 0");
        plan.model.mean_shift = std::move(shift);
    } else if (keys.has("shift_direction")) {
        throw ParseError("shift_direction given without shift_delta");
    }

    const std::string trunc = keys.take("truncation");
    if (trunc == "fixed") {
        plan.truncation.kind = TruncationRule::Kind::fixed;
        plan.truncation.fixed_d =
            static_cast<std::size_t>(parse_uint_value("truncation_d", keys.take("truncation_d")));
    } else if (trunc == "power") {
        plan.truncation.kind = TruncationRule::Kind::power;
        plan.truncation.power_beta =
            parse_double_value("truncation_beta", keys.take("truncation_beta"));
    } else if (trunc == "log") {
        plan.truncation.kind = TruncationRule::Kind::log2;
    } else {
        throw ParseError("truncation: unknown rule '" + trunc + "' (fixed, power, log)");
    }

    plan.n_grid = parse_uint_list("n_grid", keys.take("n_grid"));
    plan.m_datasets = static_cast<std::size_t>(parse_uint_value("m_datasets", keys.take("m_datasets")));
    plan.b_replicates =
        static_cast<std::size_t>(parse_uint_value("b_replicates", keys.take("b_replicates")));
    plan.alpha_list = parse_double_list("alpha_list", keys.take("alpha_list"));
    plan.master_seed = parse_uint_value("master_seed", keys.take("master_seed"));

    if (auto v = keys.take_optional("omega_repeats"))
        plan.omega_repeats = static_cast<std::size_t>(parse_uint_value("omega_repeats", *v));
    if (auto v = keys.take_optional("eps_grid"))
        plan.eps_grid = parse_double_list("eps_grid", *v);
    if (auto v = keys.take_optional("l_projection"))
        plan.l_projection = static_cast<std::size_t>(parse_uint_value("l_projection", *v));
    if (auto v = keys.take_optional("rotate")) plan.rotate = parse_bool_value("rotate", *v);
    if (auto v = keys.take_optional("self_test"))
        plan.self_test = parse_bool_value("self_test", *v);

    keys.expect_empty();

    try {
        plan.validate();
    } catch (const std::exception& e) {
        throw ParseError(e.what());
    }
    return plan;
}

ExperimentPlan parse_plan_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_plan_text(buffer.str());
}

}  // namespace meantest
