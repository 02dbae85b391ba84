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

#include "dscan/config.hpp"

#include <fstream>

#include <json.hpp>

namespace dscan {

using nlohmann::json;

namespace {

void merge_thresholds(detect::DetectorThresholds& th, const json& j) {
  for (const auto& [key, value] : j.items()) {
    if (key == "aid_min") th.aid_min = value.get<int>();
    else if (key == "ald_min") th.ald_min = value.get<int>();
    else if (key == "nrc_max") th.nrc_max = value.get<int>();
    else if (key == "envy_top_pct") th.envy_top_pct = value.get<int>();
    else if (key == "rdc_min") th.rdc_min = value.get<int>();
    else if (key == "rcompf_min") th.rcompf_min = value.get<int>();
    else if (key == "data_top_pct") th.data_top_pct = value.get<int>();
    else if (key == "long_top_pct") th.long_top_pct = value.get<int>();
    else if (key == "envy_ald_inverted") th.envy_ald_inverted = value.get<bool>();
    else throw std::runtime_error("unknown thresholds key: " + key);
  }
}

void merge_lexicons(detect::NameLexicon& lex, const json& j) {
  for (const auto& [key, value] : j.items()) {
    if (key == "controller") lex.controller_words = value.get<std::vector<std::string>>();
    else if (key == "procedural") lex.procedural_words = value.get<std::vector<std::string>>();
    else throw std::runtime_error("unknown lexicons key: " + key);
    for (auto* words : {&lex.controller_words, &lex.procedural_words}) {
      if (words->empty()) throw std::runtime_error("lexicon word lists must be non-empty");
      for (auto& w : *words)
        for (auto& c : w) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
  }
}

void merge_filters(metrics::FilterConfig& f, const json& j) {
  for (const auto& [key, value] : j.items()) {
    if (key == "fence_base") {
      std::string base = value.get<std::string>();
      if (base == "median") f.fence_base = metrics::FilterConfig::FenceBase::Median;
      else if (base == "q3") f.fence_base = metrics::FilterConfig::FenceBase::Q3;
      else throw std::runtime_error("fence_base must be 'median' or 'q3'");
    } else if (key == "mild_factor") {
      f.mild_factor = value.get<double>();
    } else if (key == "extreme_factor") {
      f.extreme_factor = value.get<double>();
    } else {
      throw std::runtime_error("unknown filters key: " + key);
    }
  }
}

void merge_corpus(corpus::CorpusThresholds& c, const json& j) {
  for (const auto& [key, value] : j.items()) {
    if (key == "min_commits") c.min_commits = value.get<long>();
    else if (key == "min_classes") c.min_classes = value.get<long>();
    else if (key == "min_parse_ratio") c.min_parse_ratio = value.get<double>();
    else if (key == "min_python_share") c.min_python_share = value.get<double>();
    else throw std::runtime_error("unknown corpus key: " + key);
  }
}

}  // namespace

void Config::merge_json_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("malformed config: ") + e.what());
  }
  if (!doc.is_object()) throw std::runtime_error("config must be a JSON object");
  for (const auto& [section, body] : doc.items()) {
    if (section == "thresholds") merge_thresholds(detection.thresholds, body);
    else if (section == "lexicons") merge_lexicons(detection.lexicon, body);
    else if (section == "filters") merge_filters(detection.filters, body);
    else if (section == "corpus") merge_corpus(corpus, body);
    else if (section == "report") {
      for (const auto& [key, value] : body.items()) {
        if (key == "include_tests") include_tests = value.get<bool>();
        else if (key == "min_parse_ratio") min_parse_ratio = value.get<double>();
        else throw std::runtime_error("unknown report key: " + key);
      }
    } else {
      throw std::runtime_error("unknown config section: " + section);
    }
  }
}

void Config::merge_json_file(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open config: " + file.string());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  merge_json_text(text);
}

std::string Config::echo_json() const {
  json j;
  const auto& th = detection.thresholds;
  j["thresholds"] = {
      {"aid_min", th.aid_min},       {"ald_min", th.ald_min},
      {"nrc_max", th.nrc_max},       {"envy_top_pct", th.envy_top_pct},
      {"rdc_min", th.rdc_min},       {"rcompf_min", th.rcompf_min},
      {"data_top_pct", th.data_top_pct}, {"long_top_pct", th.long_top_pct},
      {"envy_ald_inverted", th.envy_ald_inverted},
  };
  j["lexicons"] = {{"controller", detection.lexicon.controller_words},
                   {"procedural", detection.lexicon.procedural_words}};
  j["filters"] = {
      {"fence_base",
       detection.filters.fence_base == metrics::FilterConfig::FenceBase::Median ? "median" : "q3"},
      {"mild_factor", detection.filters.mild_factor},
      {"extreme_factor", detection.filters.extreme_factor},
  };
  j["report"] = {{"include_tests", include_tests}, {"min_parse_ratio", min_parse_ratio}};
  j["corpus"] = {{"min_commits", corpus.min_commits},
                 {"min_classes", corpus.min_classes},
                 {"min_parse_ratio", corpus.min_parse_ratio},
                 {"min_python_share", corpus.min_python_share}};
  return j.dump();
}

}  // namespace dscan
