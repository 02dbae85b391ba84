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

#include "dscan/pipeline.hpp"

#include <atomic>
#include <thread>

namespace dscan::pipeline {

namespace fs = std::filesystem;

namespace {

std::string rel_path_of(const fs::path& file, const fs::path& root) {
  std::error_code ec;
  fs::path rel = fs::relative(file, root, ec);
  if (ec || rel.empty()) rel = file.filename();
  return rel.generic_string();
}

std::vector<frontend::ParseOutcome> parse_all(const std::vector<fs::path>& files, int jobs) {
  std::vector<frontend::ParseOutcome> outcomes(files.size());
  if (jobs <= 1 || files.size() < 2) {
    for (size_t i = 0; i < files.size(); ++i)
      outcomes[i] = frontend::parse_path(files[i].string());
    return outcomes;
  }
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= files.size()) return;
      outcomes[i] = frontend::parse_path(files[i].string());
    }
  };
  size_t n_threads = std::min<size_t>(static_cast<size_t>(jobs), files.size());
  std::vector<std::thread> threads;
  threads.reserve(n_threads);
  for (size_t t = 0; t < n_threads; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  return outcomes;
}

}  // namespace

ProjectResult analyze_project(const fs::path& root, const std::string& name,
                              const AnalysisOptions& options) {
  ProjectResult result;
  result.name = name;
  result.root = root.string();

  std::vector<fs::path> files = corpus::enumerate_sources(root, &result.warnings);
  result.files_total = static_cast<long>(files.size());

  std::vector<frontend::ParseOutcome> outcomes = parse_all(files, options.jobs);

  std::vector<model::ModuleInput> inputs;
  for (size_t i = 0; i < outcomes.size(); ++i) {
    std::string rel = rel_path_of(files[i], root);
    if (outcomes[i].ok()) {
      inputs.push_back(model::ModuleInput{rel, outcomes[i].module});
    } else {
      FailedFile ff;
      ff.rel_path = rel;
      if (outcomes[i].error) {
        ff.line = outcomes[i].error->line;
        ff.col = outcomes[i].error->col;
        ff.message = outcomes[i].error->message;
      }
      result.failed_files.push_back(std::move(ff));
    }
  }
  result.files_parsed = static_cast<long>(inputs.size());
  frontend::ParseStats stats = frontend::parse_stats(outcomes);
  result.parse_ratio = stats.ratio;
  if (stats.empty_warning) result.warnings.push_back("empty corpus: parse ratio defined as 1.0");

  result.model = model::build_skeleton(std::move(inputs), name, root.string());
  model::link_references(*result.model);

  for (const auto& m : result.model->modules) {
    long loc = m.effective_loc();
    if (m.is_test) result.loc_test += loc;
    else result.loc_production += loc;
  }

  result.metrics = metrics::compute_project_metrics(
      *result.model, [](const model::SubroutineEntity& s) { return detect::is_accessor(s); });
  result.findings = detect::run_detection(*result.model, result.metrics,
                                          options.config.detection);
  return result;
}

std::vector<ProjectResult> analyze_roots(const std::vector<fs::path>& roots,
                                         const AnalysisOptions& options) {
  std::vector<ProjectResult> results;
  std::map<std::string, int> name_counts;
  for (const auto& root : roots) {
    std::string base = root.filename().string();
    if (base.empty()) base = root.parent_path().filename().string();
    if (base.empty()) base = "project";
    int n = ++name_counts[base];
    std::string name = n == 1 ? base : base + "_" + std::to_string(n);
    results.push_back(analyze_project(root, name, options));
  }
  return results;
}

}  // namespace dscan::pipeline
