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

#include "dscan/corpus/corpus.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>

#include <json.hpp>

#include "dscan/model/entities.hpp"

namespace dscan::corpus {

namespace fs = std::filesystem;

std::vector<ManifestEntry> load_manifest(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open manifest: " + file.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("malformed manifest: " + std::string(e.what()));
  }
  if (!doc.is_array()) throw std::runtime_error("manifest must be a JSON array");
  std::vector<ManifestEntry> entries;
  for (const auto& item : doc) {
    ManifestEntry e;
    e.path = item.at("path").get<std::string>();
    if (item.contains("commit_count")) e.commit_count = item["commit_count"].get<long>();
    if (item.contains("language_shares")) {
      double sum = 0;
      for (const auto& [lang, share] : item["language_shares"].items()) {
        e.language_shares[lang] = share.get<double>();
        sum += share.get<double>();
      }
      if (!e.language_shares.empty() && std::abs(sum - 1.0) > 0.001)
        std::fprintf(stderr, "warning: manifest shares for %s sum to %.4f\n", e.path.c_str(),
                     sum);
    }
    entries.push_back(std::move(e));
  }
  return entries;
}

const ManifestEntry* find_manifest_entry(const std::vector<ManifestEntry>& manifest,
                                         const fs::path& root) {
  for (const auto& e : manifest)
    if (fs::path(e.path) == root) return &e;
  for (const auto& e : manifest)
    if (fs::path(e.path).filename() == root.filename()) return &e;
  return nullptr;
}

namespace {

bool is_dot_dir(const fs::path& p) {
  std::string name = p.filename().string();
  return name.size() > 1 && name[0] == '.';
}

void walk(const fs::path& dir, std::set<fs::path>& visited, std::vector<fs::path>& out,
          std::vector<std::string>* warnings) {
  std::error_code ec;
  fs::path canonical = fs::canonical(dir, ec);
  if (ec) canonical = dir;
  if (!visited.insert(canonical).second) return;  // symlink cycle guard

  std::vector<fs::path> subdirs;
  std::vector<fs::path> files;
  fs::directory_iterator it(dir, fs::directory_options::skip_permission_denied, ec);
  if (ec) {
    if (warnings) warnings->push_back("unreadable directory skipped: " + dir.string());
    return;
  }
  for (const auto& entry : it) {
    std::error_code tec;
    if (entry.is_directory(tec)) {
      if (!is_dot_dir(entry.path())) subdirs.push_back(entry.path());
    } else if (entry.is_regular_file(tec)) {
      if (entry.path().extension() == ".py") files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::sort(subdirs.begin(), subdirs.end());
  out.insert(out.end(), files.begin(), files.end());
  for (const auto& sub : subdirs) walk(sub, visited, out, warnings);
}

}  // namespace

std::vector<fs::path> enumerate_sources(const fs::path& root,
                                        std::vector<std::string>* warnings) {
  std::vector<fs::path> out;
  std::set<fs::path> visited;
  std::error_code ec;
  if (!fs::exists(root, ec) || !fs::is_directory(root, ec)) {
    if (warnings) warnings->push_back("root is not a directory: " + root.string());
    return out;
  }
  walk(root, visited, out, warnings);
  std::sort(out.begin(), out.end(),
            [](const fs::path& a, const fs::path& b) { return a.string() < b.string(); });
  return out;
}

namespace {

const std::map<std::string, std::string>& extension_language_table() {
  static const std::map<std::string, std::string> kTable = {
      {".py", "python"}, {".pyw", "python"},
      {".c", "c"}, {".h", "c"},
      {".cc", "cpp"}, {".cpp", "cpp"}, {".cxx", "cpp"}, {".hpp", "cpp"}, {".hh", "cpp"},
      {".js", "javascript"}, {".jsx", "javascript"}, {".mjs", "javascript"},
      {".ts", "typescript"}, {".tsx", "typescript"},
      {".java", "java"}, {".go", "go"}, {".rb", "ruby"}, {".rs", "rust"},
      {".php", "php"}, {".cs", "csharp"}, {".swift", "swift"},
      {".kt", "kotlin"}, {".kts", "kotlin"}, {".scala", "scala"},
      {".sh", "shell"}, {".bash", "shell"}, {".pl", "perl"}, {".pm", "perl"},
      {".lua", "lua"}, {".r", "r"}, {".jl", "julia"}, {".hs", "haskell"},
      {".m", "objc"}, {".html", "html"}, {".htm", "html"}, {".css", "css"},
  };
  return kTable;
}

void scan_bytes(const fs::path& dir, std::set<fs::path>& visited,
                std::map<std::string, long long>& bytes) {
  std::error_code ec;
  fs::path canonical = fs::canonical(dir, ec);
  if (ec) canonical = dir;
  if (!visited.insert(canonical).second) return;
  fs::directory_iterator it(dir, fs::directory_options::skip_permission_denied, ec);
  if (ec) return;
  for (const auto& entry : it) {
    std::error_code tec;
    if (entry.is_directory(tec)) {
      if (!is_dot_dir(entry.path())) scan_bytes(entry.path(), visited, bytes);
    } else if (entry.is_regular_file(tec)) {
      std::string ext = entry.path().extension().string();
      std::transform(ext.begin(), ext.end(), ext.begin(),
                     [](unsigned char c) { return std::tolower(c); });
      auto lang = extension_language_table().find(ext);
      if (lang == extension_language_table().end()) continue;
      bytes[lang->second] += static_cast<long long>(entry.file_size(tec));
    }
  }
}

}  // namespace

std::map<std::string, double> language_shares_from_tree(const fs::path& root) {
  std::map<std::string, long long> bytes;
  std::set<fs::path> visited;
  scan_bytes(root, visited, bytes);
  long long total = 0;
  for (const auto& [lang, b] : bytes) total += b;
  std::map<std::string, double> shares;
  if (total == 0) return shares;
  for (const auto& [lang, b] : bytes)
    shares[lang] = static_cast<double>(b) / static_cast<double>(total);
  return shares;
}

std::optional<long> query_vcs_commit_count(const fs::path& root) {
  std::error_code ec;
  if (!fs::exists(root / ".git", ec)) return std::nullopt;
  std::string cmd = "git -C '" + root.string() + "' rev-list --count HEAD 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return std::nullopt;
  char buf[64] = {0};
  std::string output;
  while (fgets(buf, sizeof(buf), pipe)) output += buf;
  int status = pclose(pipe);
  if (status != 0 || output.empty()) return std::nullopt;
  try {
    return std::stol(output);
  } catch (...) {
    return std::nullopt;
  }
}

CorpusDecision filter_project(const std::string& project_name,
                              const std::optional<long>& commit_count,
                              const ProjectStats& stats, const CorpusThresholds& th) {
  CorpusDecision d;
  d.project = project_name;
  d.stats = stats;
  d.commit_count = commit_count;

  double py = 0;
  auto it = stats.language_shares.find("python");
  if (it != stats.language_shares.end()) py = it->second;
  bool share_ok = py >= th.min_python_share;
  if (!share_ok) {
    // Second arm: Python individually exceeds every other language.
    bool exceeds_all = !stats.language_shares.empty();
    for (const auto& [lang, share] : stats.language_shares) {
      if (lang == "python") continue;
      if (share >= py) exceeds_all = false;
    }
    share_ok = exceeds_all && py > 0;
  }
  if (!share_ok) d.reasons.push_back("python_share");

  if (commit_count.has_value()) {
    if (*commit_count < th.min_commits) d.reasons.push_back("min_commits");
  } else {
    d.commit_rule_skipped = true;
  }

  if (stats.classes < th.min_classes) d.reasons.push_back("min_classes");
  if (stats.parse_ratio < th.min_parse_ratio) d.reasons.push_back("min_parse_ratio");

  d.accepted = d.reasons.empty();
  return d;
}

std::pair<std::vector<std::string>, std::vector<std::string>> split_test_production(
    const std::vector<std::string>& rel_paths) {
  std::vector<std::string> production, test;
  for (const auto& p : rel_paths) {
    if (model::is_test_path(p)) test.push_back(p);
    else production.push_back(p);
  }
  return {std::move(production), std::move(test)};
}

}  // namespace dscan::corpus
