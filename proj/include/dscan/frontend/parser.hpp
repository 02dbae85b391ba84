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

#ifndef DSCAN_FRONTEND_PARSER_HPP
#define DSCAN_FRONTEND_PARSER_HPP

#include <memory>
#include <optional>
#include <vector>

#include "dscan/frontend/ast.hpp"
#include "dscan/frontend/tokens.hpp"
#include "dscan/frontend/source.hpp"

namespace dscan::frontend {

struct ParseResult {
  std::unique_ptr<ast::Module> module;
  std::optional<SyntaxError> error;
};

/// Parses a token stream into a module AST. Grammar: Python 3 only
/// (Python 2 constructs such as the print statement fail).
ParseResult parse_tokens(const std::vector<Token>& tokens);

}  // namespace dscan::frontend

#endif  // DSCAN_FRONTEND_PARSER_HPP
