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

#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dscan/config.hpp"
#include "dscan/pipeline.hpp"
#include "dscan/report/report.hpp"

namespace {

namespace fs = std::filesystem;
using namespace dscan;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitParseRatio = 2;
constexpr int kExitIo = 3;

// Writes to a file or stdout; unwritable destinations exit with code 3.
bool write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return true;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    return false;
  }
  out << content;
  return out.good();
}

struct AnalyzeArgs {
  std::vector<std::string> roots;
  std::string config_file;
  std::string format = "table";
  std::string output;
  bool include_tests = false;
  int jobs = 1;
  std::string dump_metrics;
  std::string dump_model;
  double min_parse_ratio = -1.0;  // <0 = not given on the command line
};

int run_analyze(const AnalyzeArgs& args) {
  Config config = Config::defaults();
  if (!args.config_file.empty()) config.merge_json_file(args.config_file);
  if (args.include_tests) config.include_tests = true;
  if (args.min_parse_ratio >= 0.0) config.min_parse_ratio = args.min_parse_ratio;

  pipeline::AnalysisOptions options;
  options.config = config;
  options.jobs = args.jobs;

  std::vector<fs::path> roots(args.roots.begin(), args.roots.end());
  for (const auto& root : roots) {
    if (!fs::is_directory(root)) {
      std::cerr << "error: not a directory: " << root.string() << "\n";
      return kExitUsage;
    }
  }
  std::vector<pipeline::ProjectResult> results = pipeline::analyze_roots(roots, options);
  report::Report rep = report::build_report(results, config.include_tests);

  for (const auto& pr : results)
    for (const auto& w : pr.warnings) std::cerr << "warning: " << pr.name << ": " << w << "\n";

  if (!args.dump_metrics.empty()) {
    std::ostringstream csv;
    report::dump_metrics_csv(csv, results);
    if (!write_output(args.dump_metrics, csv.str())) return kExitIo;
  }
  if (!args.dump_model.empty()) {
    if (!write_output(args.dump_model, report::dump_model_json(results))) return kExitIo;
  }

  std::string content;
  if (args.format == "json") {
    content = report::to_json(results, rep, config);
  } else if (args.format == "csv") {
    std::ostringstream csv;
    report::emit_csv(csv, rep);
    content = csv.str();
  } else {
    std::ostringstream table;
    report::emit_table(table, rep);
    content = table.str();
  }
  if (!write_output(args.output, content)) return kExitIo;

  if (config.min_parse_ratio > 0.0 && rep.parse_ratio < config.min_parse_ratio) {
    std::cerr << "error: parse ratio " << rep.parse_ratio << " below configured minimum "
              << config.min_parse_ratio << "\n";
    return kExitParseRatio;
  }
  return kExitOk;
}

struct CorpusFilterArgs {
  std::vector<std::string> roots;
  std::string manifest_file;
  std::string config_file;
  std::string output;
  long min_commits = -1;
  long min_classes = -1;
  double min_parse_ratio = -1.0;
  double min_python_share = -1.0;
};

int run_corpus_filter(const CorpusFilterArgs& args) {
  Config config = Config::defaults();
  if (!args.config_file.empty()) config.merge_json_file(args.config_file);
  corpus::CorpusThresholds th = config.corpus;
  if (args.min_commits >= 0) th.min_commits = args.min_commits;
  if (args.min_classes >= 0) th.min_classes = args.min_classes;
  if (args.min_parse_ratio >= 0) th.min_parse_ratio = args.min_parse_ratio;
  if (args.min_python_share >= 0) th.min_python_share = args.min_python_share;

  std::vector<corpus::ManifestEntry> manifest;
  if (!args.manifest_file.empty()) manifest = corpus::load_manifest(args.manifest_file);

  std::ostringstream lines;
  for (const auto& root_str : args.roots) {
    fs::path root(root_str);
    if (!fs::is_directory(root)) {
      std::cerr << "error: not a directory: " << root_str << "\n";
      return kExitUsage;
    }
    const corpus::ManifestEntry* entry = corpus::find_manifest_entry(manifest, root);

    std::vector<std::string> warnings;
    auto files = corpus::enumerate_sources(root, &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";

    std::vector<frontend::ParseOutcome> outcomes;
    std::vector<model::ModuleInput> inputs;
    for (const auto& file : files) {
      auto outcome = frontend::parse_path(file.string());
      if (outcome.ok()) {
        std::error_code ec;
        fs::path rel = fs::relative(file, root, ec);
        inputs.push_back(model::ModuleInput{rel.generic_string(), outcome.module});
      }
      outcomes.push_back(std::move(outcome));
    }
    auto stats = frontend::parse_stats(outcomes);
    if (stats.empty_warning)
      std::cerr << "warning: " << root_str << ": empty corpus, parse ratio defined as 1.0\n";
    auto model = model::build_skeleton(std::move(inputs), root.filename().string(), root_str);

    corpus::ProjectStats pstats;
    pstats.files = static_cast<long>(files.size());
    pstats.classes = static_cast<long>(model->classes.size());
    pstats.parse_ratio = stats.ratio;
    if (entry && !entry->language_shares.empty()) pstats.language_shares = entry->language_shares;
    else pstats.language_shares = corpus::language_shares_from_tree(root);

    std::optional<long> commits;
    if (entry && entry->commit_count) commits = entry->commit_count;
    if (!commits) commits = corpus::query_vcs_commit_count(root);
    if (!commits)
      std::cerr << "warning: " << root_str << ": commit count unknown, rule skipped\n";

    auto decision = corpus::filter_project(root.filename().string(), commits, pstats, th);

    nlohmann::json j;
    j["project"] = decision.project;
    j["path"] = root_str;
    j["accepted"] = decision.accepted;
    j["reasons"] = decision.reasons;
    j["commit_rule_skipped"] = decision.commit_rule_skipped;
    if (decision.commit_count) j["commit_count"] = *decision.commit_count;
    double py = 0;
    auto it = pstats.language_shares.find("python");
    if (it != pstats.language_shares.end()) py = it->second;
    j["stats"] = {{"files", pstats.files},
                  {"classes", pstats.classes},
                  {"parse_ratio", pstats.parse_ratio},
                  {"python_share", py}};
    lines << j.dump() << "\n";
  }
  if (!write_output(args.output, lines.str())) return kExitIo;
  return kExitOk;
}

int run_explain(const std::string& findings_file, const std::string& entity) {
  std::ifstream in(findings_file);
  if (!in) {
    std::cerr << "error: cannot open " << findings_file << "\n";
    return kExitIo;
  }
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  auto findings = report::findings_from_json(text);
  int matches = 0;
  for (const auto& f : findings) {
    if (f.entity != entity) continue;
    if (matches) std::cout << "\n";
    report::explain_finding(std::cout, f);
    ++matches;
  }
  if (!matches) {
    std::cerr << "no findings recorded for entity: " << entity << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"design defect detector for Python source trees"};
  app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
  app.require_subcommand(1);

  AnalyzeArgs analyze_args;
  auto* analyze = app.add_subcommand("analyze", "analyze source roots and report defects");
  analyze->add_option("roots", analyze_args.roots, "project root directories")->required();
  analyze->add_option("--config", analyze_args.config_file, "JSON configuration file");
  analyze->add_option("--format", analyze_args.format, "output format")
      ->check(CLI::IsMember({"table", "json", "csv"}));
  analyze->add_option("--output", analyze_args.output, "output path (default stdout)");
  analyze->add_flag("--include-tests", analyze_args.include_tests,
                    "include findings from test code in the report");
  analyze->add_option("--jobs", analyze_args.jobs, "parser worker threads")
      ->check(CLI::Range(1, 256));
  analyze->add_option("--dump-metrics", analyze_args.dump_metrics, "write metric samples CSV");
  analyze->add_option("--dump-model", analyze_args.dump_model, "write code model JSON");
  analyze->add_option("--min-parse-ratio", analyze_args.min_parse_ratio,
                      "fail (exit 2) when the corpus parse ratio is lower");

  CorpusFilterArgs filter_args;
  auto* corpus_cmd = app.add_subcommand("corpus", "corpus utilities");
  auto* filter = corpus_cmd->add_subcommand("filter", "apply corpus inclusion rules");
  filter->add_option("roots", filter_args.roots, "candidate project roots")->required();
  filter->add_option("--manifest", filter_args.manifest_file,
                     "JSON manifest with commit counts and language shares");
  filter->add_option("--config", filter_args.config_file, "JSON configuration file");
  filter->add_option("--output", filter_args.output, "output path (default stdout)");
  filter->add_option("--min-commits", filter_args.min_commits, "minimum commit count");
  filter->add_option("--min-classes", filter_args.min_classes, "minimum class count");
  filter->add_option("--min-parse-ratio", filter_args.min_parse_ratio, "minimum parse ratio");
  filter->add_option("--min-python-share", filter_args.min_python_share,
                     "minimum Python share of code bytes");

  std::string explain_file, explain_entity;
  auto* explain = app.add_subcommand("explain", "show one finding's evidence and thresholds");
  explain->add_option("findings", explain_file, "findings JSON written by analyze")->required();
  explain->add_option("entity", explain_entity, "entity path (module.py::Qual::name)")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (analyze->parsed()) return run_analyze(analyze_args);
    if (corpus_cmd->parsed()) {
      if (!filter->parsed()) {
        std::cerr << "error: corpus requires the 'filter' subcommand\n";
        return kExitUsage;
      }
      return run_corpus_filter(filter_args);
    }
    if (explain->parsed()) return run_explain(explain_file, explain_entity);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
