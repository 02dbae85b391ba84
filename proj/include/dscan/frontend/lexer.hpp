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

#ifndef DSCAN_FRONTEND_LEXER_HPP
#define DSCAN_FRONTEND_LEXER_HPP

#include <optional>
#include <vector>

#include "dscan/frontend/source.hpp"
#include "dscan/frontend/tokens.hpp"

namespace dscan::frontend {

struct LexResult {
  std::vector<Token> tokens;
  std::optional<SyntaxError> error;
  // 1-based; code_lines[i] is true when physical line i holds at least one
  // token that is neither a comment nor whitespace. Docstrings are code.
  std::vector<bool> code_lines;
};

/// Tokenizes normalized source text. Indentation (tabstop 8, with the
/// tabstop-1 cross check for tab/space consistency), implicit joins inside
/// brackets, explicit backslash joins and string prefixes follow the
/// reference interpreter's tokenizer. On error the token list is partial.
LexResult tokenize(const SourceFile& file);

/// Tokenizes an expression fragment (no indentation handling). Used for
/// f-string replacement fields.
LexResult tokenize_fragment(const std::string& text, int base_line);

}  // namespace dscan::frontend

#endif  // DSCAN_FRONTEND_LEXER_HPP
