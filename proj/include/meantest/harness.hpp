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

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "meantest/diagnostics.hpp"
#include "meantest/sequence_model.hpp"

namespace meantest {

enum class ExperimentKind { level_study, bootstrap_ks, limit_law, diagnostics_sweep };

const char* to_string(ExperimentKind kind) noexcept;
ExperimentKind experiment_kind_from_string(const std::string& s);

/// A complete, seed-deterministic experiment description. Everything that
/// affects the numbers lives here; worker count does not.
struct ExperimentPlan {
    ExperimentKind kind = ExperimentKind::level_study;
    SpectralModel model;
    TruncationRule truncation;
    std::vector<std::size_t> n_grid;
    std::size_t m_datasets = 1000;
    std::size_t b_replicates = 1000;
    std::vector<double> alpha_list{0.05};
    std::uint64_t master_seed = 0;

    // Kind-specific knobs.
    std::size_t omega_repeats = 10;        // bootstrap_ks: datasets whose bootstrap is compared
    std::vector<double> eps_grid;          // diagnostics_sweep; empty = default grid
    std::size_t l_projection = 0;          // diagnostics_sweep; 0 = d_n
    bool rotate = false;                   // conjugate the diagonal model by a Haar rotation
    bool self_test = false;                // bootstrap_ks: replace bootstrap by fresh datasets

    void validate() const;
};

/// One flattened result record. alpha is set for level-study cells, eps for
/// Lindeberg cells; value is NaN when the cell failed.
struct CellRecord {
    std::size_t n = 0;
    std::size_t d = 0;
    std::optional<double> alpha;
    std::optional<double> eps;
    std::string metric;
    double value = 0.0;
    double stderr_ = 0.0;
    double wall_time_ms = 0.0;
    std::optional<std::string> error;
};

struct ExperimentReport {
    std::string version;
    ExperimentPlan plan;
    std::vector<CellRecord> cells;
    std::size_t failed_cells = 0;
};

using ProgressFn = std::function<void(const std::string&)>;

/// Run a validated plan. Numeric fields of the report depend only on the
/// plan (worker count and progress sink never feed back into them).
ExperimentReport run_plan(const ExperimentPlan& plan, unsigned threads = 0,
                          const ProgressFn& progress = {});

ExperimentReport run_level_study(const ExperimentPlan& plan, unsigned threads = 0,
                                 const ProgressFn& progress = {});
ExperimentReport run_bootstrap_ks(const ExperimentPlan& plan, unsigned threads = 0,
                                  const ProgressFn& progress = {});
ExperimentReport run_limit_law(const ExperimentPlan& plan, unsigned threads = 0,
                               const ProgressFn& progress = {});
ExperimentReport run_diagnostics_sweep(const ExperimentPlan& plan, unsigned threads = 0,
                                       const ProgressFn& progress = {});

/// Parse the flat key = value plan format (comma-separated lists, '#'
/// comments). Errors name the offending key.
ExperimentPlan parse_plan_text(const std::string& text);
ExperimentPlan parse_plan_file(const std::string& path);

}  // namespace meantest
