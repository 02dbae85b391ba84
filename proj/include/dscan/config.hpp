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

#ifndef DSCAN_CONFIG_HPP
#define DSCAN_CONFIG_HPP

#include <filesystem>
#include <string>

#include "dscan/corpus/corpus.hpp"
#include "dscan/detect/detect.hpp"

namespace dscan {

inline constexpr const char* kToolName = "defectscan";
inline constexpr const char* kToolVersion = "0.1.0";

/// Tool configuration. Precedence: built-in defaults, then the config file,
/// then explicit command-line flags.
struct Config {
  detect::DetectionConfig detection;
  corpus::CorpusThresholds corpus;
  bool include_tests = false;
  double min_parse_ratio = 0.0;  // analyze-time enforcement; 0 disables

  static Config defaults() { return Config{}; }

  /// Merges a JSON config document over the current values. Sections:
  /// `thresholds`, `lexicons`, `filters`, `report`, `corpus`. Throws
  /// std::runtime_error on malformed input or unknown keys.
  void merge_json_file(const std::filesystem::path& file);
  void merge_json_text(const std::string& text);

  /// The effective configuration, serialized for report echoing.
  std::string echo_json() const;
};

}  // namespace dscan

#endif  // DSCAN_CONFIG_HPP
