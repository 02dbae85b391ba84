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

#ifndef DSCAN_FRONTEND_FRONTEND_HPP
#define DSCAN_FRONTEND_FRONTEND_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dscan/frontend/ast.hpp"
#include "dscan/frontend/source.hpp"

namespace dscan::frontend {

/// A successfully parsed module: the tree plus the per-line code
/// classification that drives effective-LOC counting.
struct ParsedModule {
  SourceFile file;
  std::unique_ptr<ast::Module> tree;
  std::vector<bool> code_lines;  // 1-based; true = line holds code

  /// Lines in [first, last] (inclusive, 1-based) holding at least one token
  /// that is neither a comment nor whitespace.
  int effective_loc(int first, int last) const;
  /// Whole-file effective LOC.
  int effective_loc() const;
};

enum class ParseStatus : uint8_t { Parsed, Failed };

struct ParseOutcome {
  std::string path;
  ParseStatus status = ParseStatus::Failed;
  std::shared_ptr<ParsedModule> module;  // set iff status == Parsed
  std::optional<SyntaxError> error;      // set iff status == Failed
  int physical_lines = 0;

  bool ok() const { return status == ParseStatus::Parsed; }
};

/// Parses one already-decoded source file. Never throws; syntax errors,
/// decoding problems and internal faults all become failed outcomes.
ParseOutcome parse_file(SourceFile file);

/// Reads, decodes and parses a file from disk. I/O errors become failed
/// outcomes with a message.
ParseOutcome parse_path(const std::string& path);

struct ParseStats {
  long parsed = 0;
  long total = 0;
  double ratio = 1.0;
  bool empty_warning = false;  // total was 0; ratio defined as 1.0
};

ParseStats parse_stats(const std::vector<ParseOutcome>& outcomes);

}  // namespace dscan::frontend

#endif  // DSCAN_FRONTEND_FRONTEND_HPP
