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

#include <string>

#include "meantest/diagnostics.hpp"
#include "meantest/harness.hpp"
#include "meantest/statistic.hpp"

namespace meantest {

/// Test report: {n, d, statistic, quantile, p_value, reject, alpha, B,
/// seed, mu0, version}. Field order is fixed, so identical inputs give
/// identical bytes.
std::string test_report_to_json(std::size_t n, std::size_t d, const TestConfig& config,
                                const BootstrapResult& result);

/// Diagnostics report; the "lindeberg" object is keyed by the grid epsilon
/// values themselves (serialized as JSON numbers).
std::string diagnostics_to_json(const DiagnosticsReport& report);

/// Experiment report with plan echo and one record per cell. With
/// include_timing=false the wall_time_ms fields are omitted, leaving only
/// seed-determined bytes.
std::string experiment_report_to_json(const ExperimentReport& report,
                                      bool include_timing = true);

/// Inverse of experiment_report_to_json; serialize(parse(s)) == s for
/// documents produced by this library.
ExperimentReport experiment_report_from_json(const std::string& text);

/// Flatten cells to CSV (n,d,alpha,eps,metric,value,stderr,wall_time_ms,error).
std::string experiment_report_to_csv(const ExperimentReport& report);

}  // namespace meantest
