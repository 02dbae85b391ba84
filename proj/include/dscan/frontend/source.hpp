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

#ifndef DSCAN_FRONTEND_SOURCE_HPP
#define DSCAN_FRONTEND_SOURCE_HPP

#include <optional>
#include <string>

namespace dscan::frontend {

/// A decoded Python source file. `text` is UTF-8 with newlines normalized
/// to '\n'. `physical_lines` counts lines of `text`; a trailing newline does
/// not add an empty line.
struct SourceFile {
  std::string path;
  std::string text;
  int physical_lines = 0;
};

struct SyntaxError {
  int line = 1;
  int col = 0;
  std::string message;
};

/// Decodes raw file bytes: UTF-8 by default (BOM stripped), otherwise the
/// PEP 263 coding declaration on line 1-2 (utf-8, latin-1 and ascii family
/// are supported). Newlines are normalized. Returns an error for undecodable
/// bytes, unsupported codecs, or embedded NUL bytes.
std::optional<SyntaxError> decode_source(const std::string& path,
                                         const std::string& raw_bytes,
                                         SourceFile& out);

/// Counts physical lines of already-normalized text.
int count_physical_lines(const std::string& text);

}  // namespace dscan::frontend

#endif  // DSCAN_FRONTEND_SOURCE_HPP
