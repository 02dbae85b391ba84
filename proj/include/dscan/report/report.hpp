// Copyright 2026 The defectscan authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DSCAN_REPORT_REPORT_HPP
#define DSCAN_REPORT_REPORT_HPP

#include <array>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "dscan/pipeline.hpp"

namespace dscan::report {

/// Defects per 10,000 lines of code. Zero LOC yields 0 (callers surface a
/// zero-LOC warning).
double compute_density(long found, long loc);

/// Display rounding: half-up to two decimals.
std::string format_density(double density);

struct KindRow {
  long found = 0;
  double density_raw = 0.0;
};

struct Report {
  bool include_tests = false;
  long loc_basis = 0;  // LOC of the selected partition(s)
  long loc_production = 0;
  long loc_test = 0;
  long files_total = 0;
  long files_parsed = 0;
  double parse_ratio = 1.0;
  bool zero_loc_warning = false;

  std::array<KindRow, detect::kDefectKindCount> per_kind;
  // project -> kind index -> found count (selected partition)
  std::map<std::string, std::array<long, detect::kDefectKindCount>> per_project_found;
  std::map<std::string, long> per_project_loc;

  // Both partitions are always available regardless of the selection.
  std::array<long, detect::kDefectKindCount> found_production{};
  std::array<long, detect::kDefectKindCount> found_test{};

  double smells_mean_density = 0.0;        // unweighted mean over the five smells
  double antipatterns_mean_density = 0.0;  // unweighted mean over the four antipatterns
  double overall_mean_all_kinds = 0.0;     // unweighted mean over all nine kinds
  double overall_mean_detected = 0.0;      // unweighted mean over kinds with found > 0
  double overall_pooled = 0.0;             // total found / LOC x 10,000

  long total_found() const;
};

Report build_report(const std::vector<pipeline::ProjectResult>& results, bool include_tests);

void emit_table(std::ostream& out, const Report& report);
void emit_csv(std::ostream& out, const Report& report);

/// Full machine-readable document: tool version, config echo, corpus stats,
/// findings with evidence, and the report with raw and rounded densities.
std::string to_json(const std::vector<pipeline::ProjectResult>& results, const Report& report,
                    const Config& config);

/// CSV of every metric sample: project,entity_kind,entity_path,metric,value
/// with rows sorted lexicographically.
void dump_metrics_csv(std::ostream& out, const std::vector<pipeline::ProjectResult>& results);

/// Entity tree with stable ids and resolved links.
std::string dump_model_json(const std::vector<pipeline::ProjectResult>& results);

/// Findings parsed back from a report document (for the explain command).
std::vector<detect::Finding> findings_from_json(const std::string& text);

/// Human-readable explanation of one finding: evidence, fences and gates.
void explain_finding(std::ostream& out, const detect::Finding& f);

}  // namespace dscan::report

#endif  // DSCAN_REPORT_REPORT_HPP
