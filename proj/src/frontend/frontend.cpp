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

#include "dscan/frontend/frontend.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "dscan/frontend/lexer.hpp"
#include "dscan/frontend/parser.hpp"

namespace dscan::frontend {

int ParsedModule::effective_loc(int first, int last) const {
  if (first < 1) first = 1;
  if (last >= static_cast<int>(code_lines.size()))
    last = static_cast<int>(code_lines.size()) - 1;
  int n = 0;
  for (int l = first; l <= last; ++l)
    if (code_lines[static_cast<size_t>(l)]) ++n;
  return n;
}

int ParsedModule::effective_loc() const {
  return effective_loc(1, static_cast<int>(code_lines.size()) - 1);
}

ParseOutcome parse_file(SourceFile file) {
  ParseOutcome out;
  out.path = file.path;
  out.physical_lines = file.physical_lines;
  try {
    LexResult lex = tokenize(file);
    if (lex.error) {
      out.status = ParseStatus::Failed;
      out.error = lex.error;
      return out;
    }
    ParseResult parsed = parse_tokens(lex.tokens);
    if (parsed.error) {
      out.status = ParseStatus::Failed;
      out.error = parsed.error;
      return out;
    }
    auto mod = std::make_shared<ParsedModule>();
    mod->file = std::move(file);
    mod->tree = std::move(parsed.module);
    mod->code_lines = std::move(lex.code_lines);
    out.status = ParseStatus::Parsed;
    out.module = std::move(mod);
  } catch (const std::exception& e) {
    out.status = ParseStatus::Failed;
    out.error = SyntaxError{1, 0, std::string("internal parser fault: ") + e.what()};
  }
  return out;
}

ParseOutcome parse_path(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    ParseOutcome out;
    out.path = path;
    out.status = ParseStatus::Failed;
    out.error = SyntaxError{1, 0, "cannot open file"};
    return out;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  SourceFile file;
  if (auto err = decode_source(path, buf.str(), file)) {
    ParseOutcome out;
    out.path = path;
    out.status = ParseStatus::Failed;
    out.error = err;
    return out;
  }
  return parse_file(std::move(file));
}

ParseStats parse_stats(const std::vector<ParseOutcome>& outcomes) {
  ParseStats s;
  s.total = static_cast<long>(outcomes.size());
  for (const auto& o : outcomes)
    if (o.ok()) ++s.parsed;
  if (s.total == 0) {
    s.ratio = 1.0;
    s.empty_warning = true;
  } else {
    s.ratio = static_cast<double>(s.parsed) / static_cast<double>(s.total);
  }
  return s;
}

}  // namespace dscan::frontend
