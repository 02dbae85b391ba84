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

#ifndef DSCAN_CORPUS_CORPUS_HPP
#define DSCAN_CORPUS_CORPUS_HPP

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dscan::corpus {

struct CorpusThresholds {
  long min_commits = 100;
  long min_classes = 20;
  double min_parse_ratio = 0.99;
  double min_python_share = 0.40;
};

struct ManifestEntry {
  std::string path;
  std::optional<long> commit_count;
  std::map<std::string, double> language_shares;  // language class -> fraction
};

/// Loads a JSON manifest: an array of {path, commit_count,
/// language_shares?}. Throws std::runtime_error on malformed input.
std::vector<ManifestEntry> load_manifest(const std::filesystem::path& file);

/// Finds the manifest entry for a project root (exact path match, then
/// basename match).
const ManifestEntry* find_manifest_entry(const std::vector<ManifestEntry>& manifest,
                                         const std::filesystem::path& root);

/// All *.py files under root in deterministic lexicographic order, skipping
/// any directory whose name starts with a dot. Symlinked directories are
/// followed at most once (cycle guard). Unreadable directories produce a
/// warning and are skipped.
std::vector<std::filesystem::path> enumerate_sources(const std::filesystem::path& root,
                                                     std::vector<std::string>* warnings = nullptr);

/// Bytes per language class over the tree (dot directories excluded),
/// normalized to fractions. Includes only recognized code extensions.
std::map<std::string, double> language_shares_from_tree(const std::filesystem::path& root);

/// Commit count from the local version control history, or nullopt when not
/// available (no repository, or the tool is missing).
std::optional<long> query_vcs_commit_count(const std::filesystem::path& root);

struct ProjectStats {
  long files = 0;
  long classes = 0;
  double parse_ratio = 1.0;
  std::map<std::string, double> language_shares;
};

struct CorpusDecision {
  std::string project;
  bool accepted = false;
  std::vector<std::string> reasons;  // failed rule identifiers; empty iff accepted
  bool commit_rule_skipped = false;  // commit count unknown; rule not applied
  ProjectStats stats;
  std::optional<long> commit_count;
};

/// Applies the four inclusion rules: python share (>= threshold or Python
/// exceeding every other language), commit count, class count, parse ratio.
CorpusDecision filter_project(const std::string& project_name,
                              const std::optional<long>& commit_count,
                              const ProjectStats& stats, const CorpusThresholds& thresholds);

/// Partitions paths into (production, test) by the test-path substring rule,
/// preserving enumeration order.
std::pair<std::vector<std::string>, std::vector<std::string>> split_test_production(
    const std::vector<std::string>& rel_paths);

}  // namespace dscan::corpus

#endif  // DSCAN_CORPUS_CORPUS_HPP
