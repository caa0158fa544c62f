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

#include "meantest/report.hpp"

#include <cmath>
#include <sstream>

#include "json.hpp"

#include "meantest/version.hpp"

namespace meantest {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json number_or_null(double v) {
    if (std::isnan(v)) return nullptr;
    return v;
}

const char* innovation_name(Innovation innovation) {
    switch (innovation) {
        case Innovation::gaussian: return "gaussian";
        case Innovation::rademacher: return "rademacher";
        case Innovation::student_t: return "student_t";
    }
    return "unknown";
}

Innovation innovation_from_name(const std::string& name) {
    if (name == "gaussian") return Innovation::gaussian;
    if (name == "rademacher") return Innovation::rademacher;
    if (name == "student_t") return Innovation::student_t;
    throw ParseError("innovation: unknown law '" + name + "'");
}

ordered_json plan_to_json(const ExperimentPlan& plan) {
    ordered_json j;
    j["kind"] = to_string(plan.kind);

    ordered_json model;
    if (plan.model.use_decay) {
        model["spectrum"] = "decay";
        model["lambda_c"] = plan.model.decay_c;
        model["lambda_gamma"] = plan.model.decay_gamma;
    } else {
        model["spectrum"] = "explicit";
        model["lambdas"] = plan.model.lambdas_explicit;
    }
    model["innovation"] = innovation_name(plan.model.innovation);
    if (plan.model.innovation == Innovation::student_t)
        model["student_nu"] = plan.model.student_nu;
    if (plan.model.mean_shift.has_value()) {
        model["shift_delta"] = plan.model.mean_shift->delta;
        model["shift_direction"] = plan.model.mean_shift->direction;
    }
    j["model"] = std::move(model);

    ordered_json trunc;
    switch (plan.truncation.kind) {
        case TruncationRule::Kind::fixed:
            trunc["rule"] = "fixed";
            trunc["d"] = plan.truncation.fixed_d;
            break;
        case TruncationRule::Kind::power:
            trunc["rule"] = "power";
            trunc["beta"] = plan.truncation.power_beta;
            break;
        case TruncationRule::Kind::log2:
            trunc["rule"] = "log";
            break;
    }
    j["truncation"] = std::move(trunc);

    j["n_grid"] = plan.n_grid;
    j["m_datasets"] = plan.m_datasets;
    j["b_replicates"] = plan.b_replicates;
    j["alpha_list"] = plan.alpha_list;
    j["master_seed"] = plan.master_seed;
    j["omega_repeats"] = plan.omega_repeats;
    j["eps_grid"] = plan.eps_grid;
    j["l_projection"] = plan.l_projection;
    j["rotate"] = plan.rotate;
    j["self_test"] = plan.self_test;
    return j;
}

ExperimentPlan plan_from_json(const ordered_json& j) {
    ExperimentPlan plan;
    plan.kind = experiment_kind_from_string(j.at("kind").get<std::string>());

    const auto& model = j.at("model");
    const std::string spectrum = model.at("spectrum").get<std::string>();
    if (spectrum == "decay") {
        plan.model.use_decay = true;
        plan.model.decay_c = model.at("lambda_c").get<double>();
        plan.model.decay_gamma = model.at("lambda_gamma").get<double>();
    } else if (spectrum == "explicit") {
        plan.model.use_decay = false;
        plan.model.lambdas_explicit = model.at("lambdas").get<std::vector<double>>();
    } else {
        throw ParseError("model.spectrum: unknown value '" + spectrum + "'");
    }
    plan.model.innovation = innovation_from_name(model.at("innovation").get<std::string>());
    if (model.contains("student_nu"))
        plan.model.student_nu = model.at("student_nu").get<double>();
    if (model.contains("shift_delta")) {
        MeanShift shift;
        shift.delta = model.at("shift_delta").get<double>();
        shift.direction = model.at("shift_direction").get<std::vector<double>>();
        plan.model.mean_shift = std::move(shift);
    }

    const auto& trunc = j.at("truncation");
    const std::string rule = trunc.at("rule").get<std::string>();
    if (rule == "fixed") {
        plan.truncation.kind = TruncationRule::Kind::fixed;
        plan.truncation.fixed_d = trunc.at("d").get<std::size_t>();
    } else if (rule == "power") {
        plan.truncation.kind = TruncationRule::Kind::power;
        plan.truncation.power_beta = trunc.at("beta").get<double>();
    } else if (rule == "log") {
        plan.truncation.kind = TruncationRule::Kind::log2;
    } else {
        throw ParseError("truncation.rule: unknown value '" + rule + "'");
    }

    plan.n_grid = j.at("n_grid").get<std::vector<std::size_t>>();
    plan.m_datasets = j.at("m_datasets").get<std::size_t>();
    plan.b_replicates = j.at("b_replicates").get<std::size_t>();
    plan.alpha_list = j.at("alpha_list").get<std::vector<double>>();
    plan.master_seed = j.at("master_seed").get<std::uint64_t>();
    plan.omega_repeats = j.at("omega_repeats").get<std::size_t>();
    plan.eps_grid = j.at("eps_grid").get<std::vector<double>>();
    plan.l_projection = j.at("l_projection").get<std::size_t>();
    plan.rotate = j.at("rotate").get<bool>();
    plan.self_test = j.at("self_test").get<bool>();
    return plan;
}

}  // namespace

std::string test_report_to_json(std::size_t n, std::size_t d, const TestConfig& config,
                                const BootstrapResult& result) {
    ordered_json j;
    j["n"] = n;
    j["d"] = d;
    j["statistic"] = result.statistic;
    j["quantile"] = result.quantile;
    j["p_value"] = result.p_value;
    j["reject"] = result.reject;
    j["alpha"] = config.alpha;
    j["B"] = config.b_replicates;
    j["seed"] = config.seed;
    j["mu0"] = config.mu0.has_value() ? ordered_json(*config.mu0)
                                      : ordered_json(std::vector<double>(d, 0.0));
    j["version"] = version_string;
    return j.dump(2) + "\n";
}

std::string diagnostics_to_json(const DiagnosticsReport& report) {
    ordered_json j;
    j["n"] = report.n;
    j["d"] = report.d;
    j["l_projection"] = report.l_projection;
    ordered_json lindeberg = ordered_json::object();
    for (const auto& [eps, value] : report.lindeberg)
        lindeberg[ordered_json(eps).dump()] = value;
    j["lindeberg"] = std::move(lindeberg);
    j["trace_sum"] = report.trace_sum;
    ordered_json entries = ordered_json::array();
    for (const auto& entry : report.cov_entries) {
        ordered_json e;
        e["k"] = entry.k + 1;  // 1-based in reports
        e["l"] = entry.l + 1;
        e["value"] = entry.value;
        entries.push_back(std::move(e));
    }
    j["cov_entries"] = std::move(entries);
    j["version"] = version_string;
    return j.dump(2) + "\n";
}

std::string experiment_report_to_json(const ExperimentReport& report, bool include_timing) {
    ordered_json j;
    j["version"] = report.version;
    j["plan"] = plan_to_json(report.plan);
    ordered_json cells = ordered_json::array();
    for (const auto& cell : report.cells) {
        ordered_json c;
        c["n"] = cell.n;
        c["d"] = cell.d;
        c["alpha"] = cell.alpha.has_value() ? ordered_json(*cell.alpha) : ordered_json(nullptr);
        c["eps"] = cell.eps.has_value() ? ordered_json(*cell.eps) : ordered_json(nullptr);
        c["metric"] = cell.metric;
        c["value"] = number_or_null(cell.value);
        c["stderr"] = number_or_null(cell.stderr_);
        if (include_timing) c["wall_time_ms"] = cell.wall_time_ms;
        c["error"] =
            cell.error.has_value() ? ordered_json(*cell.error) : ordered_json(nullptr);
        cells.push_back(std::move(c));
    }
    j["cells"] = std::move(cells);
    j["failed_cells"] = report.failed_cells;
    return j.dump(2) + "\n";
}

ExperimentReport experiment_report_from_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("report JSON: ") + e.what());
    }
    try {
        ExperimentReport report;
        report.version = j.at("version").get<std::string>();
        report.plan = plan_from_json(j.at("plan"));
        for (const auto& c : j.at("cells")) {
            CellRecord cell;
            cell.n = c.at("n").get<std::size_t>();
            cell.d = c.at("d").get<std::size_t>();
            if (!c.at("alpha").is_null()) cell.alpha = c.at("alpha").get<double>();
            if (!c.at("eps").is_null()) cell.eps = c.at("eps").get<double>();
            cell.metric = c.at("metric").get<std::string>();
            cell.value = c.at("value").is_null() ? std::nan("") : c.at("value").get<double>();
            cell.stderr_ =
                c.at("stderr").is_null() ? std::nan("") : c.at("stderr").get<double>();
            if (c.contains("wall_time_ms"))
                cell.wall_time_ms = c.at("wall_time_ms").get<double>();
            if (!c.at("error").is_null()) cell.error = c.at("error").get<std::string>();
            report.cells.push_back(std::move(cell));
        }
        report.failed_cells = j.at("failed_cells").get<std::size_t>();
        return report;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("report JSON: ") + e.what());
    }
}

std::string experiment_report_to_csv(const ExperimentReport& report) {
    std::ostringstream out;
    out << "n,d,alpha,eps,metric,value,stderr,wall_time_ms,error\n";
    for (const auto& cell : report.cells) {
        out << cell.n << ',' << cell.d << ',';
        if (cell.alpha.has_value()) out << ordered_json(*cell.alpha).dump();
        out << ',';
        if (cell.eps.has_value()) out << ordered_json(*cell.eps).dump();
        out << ',' << cell.metric << ',';
        if (!std::isnan(cell.value)) out << ordered_json(cell.value).dump();
        out << ',';
        if (!std::isnan(cell.stderr_)) out << ordered_json(cell.stderr_).dump();
        out << ',' << ordered_json(cell.wall_time_ms).dump() << ',';
        if (cell.error.has_value()) {
            std::string quoted = "\"";
            for (char ch : *cell.error) {
                if (ch == '"') quoted += "\"\"";
                else quoted += ch;
            }
            quoted += '"';
            out << quoted;
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace meantest
