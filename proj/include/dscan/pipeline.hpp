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

#ifndef DSCAN_PIPELINE_HPP
#define DSCAN_PIPELINE_HPP

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "dscan/config.hpp"
#include "dscan/corpus/corpus.hpp"
#include "dscan/detect/detect.hpp"
#include "dscan/metrics/metrics.hpp"
#include "dscan/model/builder.hpp"

namespace dscan::pipeline {

struct FailedFile {
  std::string rel_path;
  int line = 0;
  int col = 0;
  std::string message;
};

struct ProjectResult {
  std::string name;
  std::string root;
  std::unique_ptr<model::Project> model;
  metrics::ProjectMetrics metrics;
  long files_total = 0;
  long files_parsed = 0;
  double parse_ratio = 1.0;
  std::vector<FailedFile> failed_files;
  std::vector<std::string> warnings;
  long loc_production = 0;
  long loc_test = 0;
  std::vector<detect::Finding> findings;  // sorted; test findings flagged
};

struct AnalysisOptions {
  Config config;
  int jobs = 1;
};

/// Full pipeline for one project root: enumerate, parse (optionally in
/// parallel), model, metrics, detection. Deterministic for any job count.
ProjectResult analyze_project(const std::filesystem::path& root, const std::string& name,
                              const AnalysisOptions& options);

/// One project per root; project names are the root basenames, deduplicated
/// in root order.
std::vector<ProjectResult> analyze_roots(const std::vector<std::filesystem::path>& roots,
                                         const AnalysisOptions& options);

}  // namespace dscan::pipeline

#endif  // DSCAN_PIPELINE_HPP
