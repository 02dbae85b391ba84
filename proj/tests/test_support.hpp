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

#ifndef DSCAN_TESTS_TEST_SUPPORT_HPP
#define DSCAN_TESTS_TEST_SUPPORT_HPP

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "dscan/frontend/frontend.hpp"

namespace dscan::test {

inline frontend::SourceFile make_source(std::string text, std::string path = "<test>") {
  frontend::SourceFile f;
  f.path = std::move(path);
  f.text = std::move(text);
  f.physical_lines = frontend::count_physical_lines(f.text);
  return f;
}

inline frontend::ParseOutcome parse_text(const std::string& text) {
  return frontend::parse_file(make_source(text));
}

/// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    auto base = std::filesystem::temp_directory_path();
    std::mt19937_64 rng(std::random_device{}());
    for (int attempt = 0; attempt < 64; ++attempt) {
      auto p = base / ("dscan_test_" + std::to_string(rng()));
      std::error_code ec;
      if (std::filesystem::create_directory(p, ec)) {
        path_ = p;
        return;
      }
    }
    std::abort();
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }

  void write(const std::string& rel, const std::string& content) const {
    auto p = path_ / rel;
    std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    out << content;
  }

 private:
  std::filesystem::path path_;
};

inline bool python3_available() {
  static const int status = std::system("python3 -c 'pass' > /dev/null 2>&1");
  return status == 0;
}

/// Runs the reference interpreter's own syntax check; returns true when the
/// file compiles.
inline bool python3_accepts(const std::filesystem::path& file) {
  std::string cmd =
      "python3 -c 'import ast,sys; ast.parse(open(sys.argv[1],\"rb\").read())' '" +
      file.string() + "' > /dev/null 2>&1";
  return std::system(cmd.c_str()) == 0;
}

}  // namespace dscan::test

#endif  // DSCAN_TESTS_TEST_SUPPORT_HPP
