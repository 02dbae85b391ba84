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

#ifndef DSCAN_FRONTEND_TOKENS_HPP
#define DSCAN_FRONTEND_TOKENS_HPP

#include <cstdint>
#include <string>

namespace dscan::frontend {

enum class TokKind : uint8_t {
  End,
  Newline,
  Indent,
  Dedent,
  Name,
  Number,
  String,

  // Keywords (hard keywords only; match/case/type stay Name).
  KwFalse, KwNone, KwTrue, KwAnd, KwAs, KwAssert, KwAsync, KwAwait,
  KwBreak, KwClass, KwContinue, KwDef, KwDel, KwElif, KwElse, KwExcept,
  KwFinally, KwFor, KwFrom, KwGlobal, KwIf, KwImport, KwIn, KwIs,
  KwLambda, KwNonlocal, KwNot, KwOr, KwPass, KwRaise, KwReturn, KwTry,
  KwWhile, KwWith, KwYield,

  // Punctuation and operators.
  LParen, RParen, LBracket, RBracket, LBrace, RBrace,
  Comma, Colon, Semicolon, Dot, Ellipsis, Arrow,
  Assign, ColonAssign,
  Plus, Minus, Star, DoubleStar, Slash, DoubleSlash, Percent, At,
  Amp, Pipe, Caret, Tilde, LShift, RShift,
  Less, Greater, LessEq, GreaterEq, EqEq, NotEq,
  PlusAssign, MinusAssign, StarAssign, SlashAssign, DoubleSlashAssign,
  PercentAssign, AtAssign, AmpAssign, PipeAssign, CaretAssign,
  LShiftAssign, RShiftAssign, DoubleStarAssign,
};

struct StringFlags {
  bool raw = false;
  bool bytes = false;
  bool fstring = false;
};

struct Token {
  TokKind kind = TokKind::End;
  std::string text;       // raw source text (for String: including prefix and quotes)
  int line = 0;           // 1-based first line
  int col = 0;            // 0-based column
  int end_line = 0;       // 1-based last line (differs from line for multi-line strings)
  StringFlags sflags;     // String tokens only
  // String tokens: offsets of the value body within `text` (between the quotes).
  uint32_t body_begin = 0;
  uint32_t body_end = 0;
};

bool is_keyword(TokKind k);
const char* tok_kind_name(TokKind k);

}  // namespace dscan::frontend

#endif  // DSCAN_FRONTEND_TOKENS_HPP
