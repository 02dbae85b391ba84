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

#include "dscan/frontend/lexer.hpp"

#include <array>
#include <cctype>
#include <cstring>
#include <string_view>
#include <unordered_map>

namespace dscan::frontend {

namespace {

const std::unordered_map<std::string_view, TokKind>& keyword_table() {
  static const std::unordered_map<std::string_view, TokKind> kTable = {
      {"False", TokKind::KwFalse},   {"None", TokKind::KwNone},
      {"True", TokKind::KwTrue},     {"and", TokKind::KwAnd},
      {"as", TokKind::KwAs},         {"assert", TokKind::KwAssert},
      {"async", TokKind::KwAsync},   {"await", TokKind::KwAwait},
      {"break", TokKind::KwBreak},   {"class", TokKind::KwClass},
      {"continue", TokKind::KwContinue}, {"def", TokKind::KwDef},
      {"del", TokKind::KwDel},       {"elif", TokKind::KwElif},
      {"else", TokKind::KwElse},     {"except", TokKind::KwExcept},
      {"finally", TokKind::KwFinally}, {"for", TokKind::KwFor},
      {"from", TokKind::KwFrom},     {"global", TokKind::KwGlobal},
      {"if", TokKind::KwIf},         {"import", TokKind::KwImport},
      {"in", TokKind::KwIn},         {"is", TokKind::KwIs},
      {"lambda", TokKind::KwLambda}, {"nonlocal", TokKind::KwNonlocal},
      {"not", TokKind::KwNot},       {"or", TokKind::KwOr},
      {"pass", TokKind::KwPass},     {"raise", TokKind::KwRaise},
      {"return", TokKind::KwReturn}, {"try", TokKind::KwTry},
      {"while", TokKind::KwWhile},   {"with", TokKind::KwWith},
      {"yield", TokKind::KwYield},
  };
  return kTable;
}

bool is_ident_start(unsigned char c) {
  return std::isalpha(c) || c == '_' || c >= 0x80;
}
bool is_ident_cont(unsigned char c) {
  return std::isalnum(c) || c == '_' || c >= 0x80;
}
bool is_digit(unsigned char c) { return c >= '0' && c <= '9'; }

// Valid string prefixes: r b u f rb br fr rf in any case and order.
bool classify_string_prefix(std::string_view p, StringFlags& flags) {
  if (p.size() > 2) return false;
  bool r = false, b = false, f = false, u = false;
  for (char raw : p) {
    char c = static_cast<char>(std::tolower(static_cast<unsigned char>(raw)));
    if (c == 'r' && !r) r = true;
    else if (c == 'b' && !b) b = true;
    else if (c == 'f' && !f) f = true;
    else if (c == 'u' && !u) u = true;
    else return false;
  }
  if (u && (r || b || f)) return false;
  if (b && f) return false;
  flags.raw = r;
  flags.bytes = b;
  flags.fstring = f;
  return true;
}

struct Bracket {
  char open;
  int line;
  int col;
};

class Lexer {
 public:
  Lexer(const std::string& text, int physical_lines, int base_line, bool fragment_mode)
      : text_(text), base_line_(base_line), fragment_(fragment_mode) {
    result_.code_lines.assign(static_cast<size_t>(physical_lines) + 1, false);
    indents_.push_back(0);
    alt_indents_.push_back(0);
  }

  LexResult run() {
    if (fragment_) at_line_start_ = false;
    while (!done_) {
      if (!step()) break;
    }
    return std::move(result_);
  }

 private:
  const std::string& text_;
  size_t pos_ = 0;
  int line_ = 1;
  int base_line_;
  bool fragment_;
  bool at_line_start_ = true;
  bool done_ = false;
  std::vector<int> indents_, alt_indents_;
  std::vector<Bracket> brackets_;
  LexResult result_;

  char cur() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  char peek(size_t k = 1) const {
    return pos_ + k < text_.size() ? text_[pos_ + k] : '\0';
  }
  bool eof() const { return pos_ >= text_.size(); }

  int out_line() const { return line_ + base_line_ - 1; }

  int column_of(size_t p) const {
    size_t start = p;
    while (start > 0 && text_[start - 1] != '\n') --start;
    return static_cast<int>(p - start);
  }

  bool fail(int line, int col, std::string msg) {
    result_.error = SyntaxError{line + base_line_ - 1, col, std::move(msg)};
    done_ = true;
    return false;
  }

  void mark_code(int first, int last) {
    if (fragment_) return;
    for (int l = first; l <= last && l < static_cast<int>(result_.code_lines.size()); ++l)
      if (l >= 1) result_.code_lines[static_cast<size_t>(l)] = true;
  }

  void emit(TokKind kind, size_t begin, size_t end, int start_line) {
    Token t;
    t.kind = kind;
    t.text.assign(text_, begin, end - begin);
    t.line = start_line + base_line_ - 1;
    t.col = column_of(begin);
    t.end_line = out_line();
    result_.tokens.push_back(std::move(t));
    if (kind != TokKind::Newline && kind != TokKind::Indent &&
        kind != TokKind::Dedent && kind != TokKind::End)
      mark_code(start_line, line_);
  }

  void emit_marker(TokKind kind) {
    Token t;
    t.kind = kind;
    t.line = out_line();
    t.end_line = out_line();
    t.col = 0;
    result_.tokens.push_back(std::move(t));
  }

  // Measures indentation at a fresh logical line and emits INDENT/DEDENT.
  // Returns false on error or EOF.
  bool handle_indent() {
    for (;;) {
      int col = 0, alt = 0;
      while (!eof()) {
        char c = cur();
        if (c == ' ') {
          ++col;
          ++alt;
        } else if (c == '\t') {
          col = (col / 8 + 1) * 8;
          ++alt;
        } else if (c == '\f') {
          col = 0;
          alt = 0;
        } else {
          break;
        }
        ++pos_;
      }
      if (eof()) return finish_eof();
      char c = cur();
      if (c == '\n') {  // blank line
        ++pos_;
        ++line_;
        continue;
      }
      if (c == '#') {  // comment-only line
        while (!eof() && cur() != '\n') ++pos_;
        continue;
      }
      // A real logical line begins here.
      int top = indents_.back(), alt_top = alt_indents_.back();
      if (col == top) {
        if (alt != alt_top)
          return fail(line_, col, "inconsistent use of tabs and spaces in indentation");
      } else if (col > top) {
        if (alt <= alt_top)
          return fail(line_, col, "inconsistent use of tabs and spaces in indentation");
        indents_.push_back(col);
        alt_indents_.push_back(alt);
        emit_marker(TokKind::Indent);
      } else {
        while (indents_.size() > 1 && col < indents_.back()) {
          indents_.pop_back();
          alt_indents_.pop_back();
          emit_marker(TokKind::Dedent);
        }
        if (col != indents_.back())
          return fail(line_, col, "unindent does not match any outer indentation level");
        if (alt != alt_indents_.back())
          return fail(line_, col, "inconsistent use of tabs and spaces in indentation");
      }
      at_line_start_ = false;
      return true;
    }
  }

  bool finish_eof() {
    if (!brackets_.empty()) {
      const Bracket& b = brackets_.back();
      return fail(b.line, b.col,
                  std::string("'") + b.open + "' was never closed");
    }
    if (!at_line_start_) emit_marker(TokKind::Newline);
    while (indents_.size() > 1) {
      indents_.pop_back();
      alt_indents_.pop_back();
      emit_marker(TokKind::Dedent);
    }
    emit_marker(TokKind::End);
    done_ = true;
    return false;
  }

  bool step() {
    if (at_line_start_ && brackets_.empty() && !fragment_) {
      if (!handle_indent()) return false;
    }
    // Skip interior whitespace.
    while (!eof() && (cur() == ' ' || cur() == '\t' || cur() == '\f')) ++pos_;
    if (eof()) return finish_eof();

    char c = cur();
    if (c == '#') {
      while (!eof() && cur() != '\n') ++pos_;
      return true;
    }
    if (c == '\n') {
      ++pos_;
      if (!brackets_.empty()) {
        ++line_;
        return true;  // implicit join: newline is insignificant
      }
      emit_marker(TokKind::Newline);
      ++line_;
      at_line_start_ = true;
      return true;
    }
    if (c == '\\') {
      if (peek() == '\n') {
        pos_ += 2;
        ++line_;
        return true;  // explicit join
      }
      return fail(line_, column_of(pos_),
                  "unexpected character after line continuation character");
    }

    if (is_ident_start(static_cast<unsigned char>(c))) return lex_name_or_string();
    if (is_digit(static_cast<unsigned char>(c)) ||
        (c == '.' && is_digit(static_cast<unsigned char>(peek()))))
      return lex_number();
    if (c == '\'' || c == '"') return lex_string(pos_, {});
    return lex_operator();
  }

  bool lex_name_or_string() {
    size_t begin = pos_;
    int start_line = line_;
    while (!eof() && is_ident_cont(static_cast<unsigned char>(cur()))) ++pos_;
    std::string_view name(text_.data() + begin, pos_ - begin);
    if (!eof() && (cur() == '\'' || cur() == '"')) {
      StringFlags flags;
      if (classify_string_prefix(name, flags)) return lex_string(begin, flags);
    }
    auto it = keyword_table().find(name);
    emit(it != keyword_table().end() ? it->second : TokKind::Name, begin, pos_, start_line);
    return true;
  }

  bool lex_string(size_t begin, StringFlags flags) {
    int start_line = line_;
    int start_col = column_of(begin);
    char quote = cur();
    size_t body_begin;
    bool triple = false;
    if (peek() == quote && peek(2) == quote) {
      triple = true;
      pos_ += 3;
    } else {
      ++pos_;
    }
    body_begin = pos_;
    size_t body_end;
    for (;;) {
      if (eof()) {
        return fail(start_line, start_col,
                    triple ? "unterminated triple-quoted string literal"
                           : "unterminated string literal");
      }
      char c = cur();
      if (c == '\\') {
        if (pos_ + 1 >= text_.size())
          return fail(start_line, start_col, "unterminated string literal");
        if (text_[pos_ + 1] == '\n') ++line_;
        pos_ += 2;
        continue;
      }
      if (c == '\n') {
        if (!triple)
          return fail(start_line, start_col,
                      "unterminated string literal (EOL)");
        ++line_;
        ++pos_;
        continue;
      }
      if (c == quote) {
        if (!triple) {
          body_end = pos_;
          ++pos_;
          break;
        }
        if (peek() == quote && peek(2) == quote) {
          body_end = pos_;
          pos_ += 3;
          break;
        }
        ++pos_;
        continue;
      }
      ++pos_;
    }
    Token t;
    t.kind = TokKind::String;
    t.text.assign(text_, begin, pos_ - begin);
    t.line = start_line + base_line_ - 1;
    t.col = start_col;
    t.end_line = out_line();
    t.sflags = flags;
    t.body_begin = static_cast<uint32_t>(body_begin - begin);
    t.body_end = static_cast<uint32_t>(body_end - begin);
    result_.tokens.push_back(std::move(t));
    mark_code(start_line, line_);
    return true;
  }

  // Scans a digit run; underscores allowed only between digits (a single
  // leading underscore is allowed right after a base prefix).
  bool scan_digit_run(bool (*accept)(char), bool allow_lead_underscore, size_t& digits) {
    bool prev_underscore = false;
    bool first = true;
    while (!eof()) {
      char c = cur();
      if (accept(c)) {
        ++digits;
        prev_underscore = false;
        first = false;
        ++pos_;
      } else if (c == '_') {
        if (prev_underscore) return false;
        if (first && !allow_lead_underscore) return false;
        prev_underscore = true;
        first = false;
        ++pos_;
      } else {
        break;
      }
    }
    return !prev_underscore;
  }

  bool lex_number() {
    size_t begin = pos_;
    int start_line = line_;
    bool is_int = true;
    size_t digits = 0;
    auto bad = [&] { return fail(start_line, column_of(begin), "invalid numeric literal"); };
    if (cur() == '0' && (peek() == 'x' || peek() == 'X')) {
      pos_ += 2;
      if (!scan_digit_run([](char c) { return std::isxdigit(static_cast<unsigned char>(c)) != 0; },
                          true, digits) ||
          digits == 0)
        return bad();
    } else if (cur() == '0' && (peek() == 'b' || peek() == 'B')) {
      pos_ += 2;
      if (!scan_digit_run([](char c) { return c == '0' || c == '1'; }, true, digits) ||
          digits == 0)
        return bad();
    } else if (cur() == '0' && (peek() == 'o' || peek() == 'O')) {
      pos_ += 2;
      if (!scan_digit_run([](char c) { return c >= '0' && c <= '7'; }, true, digits) ||
          digits == 0)
        return bad();
    } else {
      auto dec = [](char c) { return c >= '0' && c <= '9'; };
      bool leading_zero = cur() == '0';
      size_t int_begin = pos_;
      if (cur() != '.') {
        if (!scan_digit_run(dec, false, digits)) return bad();
      }
      bool saw_nonzero = false;
      for (size_t p = int_begin; p < pos_; ++p)
        if (text_[p] != '0' && text_[p] != '_') saw_nonzero = true;
      if (!eof() && cur() == '.') {
        is_int = false;
        ++pos_;
        size_t frac = 0;
        if (!scan_digit_run(dec, false, frac)) return bad();
      }
      if (!eof() && (cur() == 'e' || cur() == 'E')) {
        char after = peek();
        char after2 = peek(2);
        if (is_digit(static_cast<unsigned char>(after)) ||
            ((after == '+' || after == '-') && is_digit(static_cast<unsigned char>(after2)))) {
          is_int = false;
          pos_ += (after == '+' || after == '-') ? 2 : 1;
          size_t exp = 0;
          if (!scan_digit_run(dec, false, exp) || exp == 0) return bad();
        }
      }
      if (!eof() && (cur() == 'j' || cur() == 'J')) {
        is_int = false;
        ++pos_;
      }
      if (is_int && leading_zero && saw_nonzero)
        return fail(start_line, column_of(begin),
                    "leading zeros in decimal integer literals are not permitted");
    }
    emit(TokKind::Number, begin, pos_, start_line);
    return true;
  }

  bool lex_operator() {
    size_t begin = pos_;
    int start_line = line_;
    struct OpEntry {
      const char* text;
      TokKind kind;
    };
    // Longest match first.
    static const std::array<OpEntry, 55> kOps = {{
        {"**=", TokKind::DoubleStarAssign}, {"//=", TokKind::DoubleSlashAssign},
        {"<<=", TokKind::LShiftAssign},     {">>=", TokKind::RShiftAssign},
        {"...", TokKind::Ellipsis},
        {"**", TokKind::DoubleStar},        {"//", TokKind::DoubleSlash},
        {"<<", TokKind::LShift},            {">>", TokKind::RShift},
        {"<=", TokKind::LessEq},            {">=", TokKind::GreaterEq},
        {"==", TokKind::EqEq},              {"!=", TokKind::NotEq},
        {"->", TokKind::Arrow},             {":=", TokKind::ColonAssign},
        {"+=", TokKind::PlusAssign},        {"-=", TokKind::MinusAssign},
        {"*=", TokKind::StarAssign},        {"/=", TokKind::SlashAssign},
        {"%=", TokKind::PercentAssign},     {"@=", TokKind::AtAssign},
        {"&=", TokKind::AmpAssign},         {"|=", TokKind::PipeAssign},
        {"^=", TokKind::CaretAssign},
        {"(", TokKind::LParen},             {")", TokKind::RParen},
        {"[", TokKind::LBracket},           {"]", TokKind::RBracket},
        {"{", TokKind::LBrace},             {"}", TokKind::RBrace},
        {",", TokKind::Comma},              {":", TokKind::Colon},
        {";", TokKind::Semicolon},          {".", TokKind::Dot},
        {"=", TokKind::Assign},             {"+", TokKind::Plus},
        {"-", TokKind::Minus},              {"*", TokKind::Star},
        {"/", TokKind::Slash},              {"%", TokKind::Percent},
        {"@", TokKind::At},                 {"&", TokKind::Amp},
        {"|", TokKind::Pipe},               {"^", TokKind::Caret},
        {"~", TokKind::Tilde},              {"<", TokKind::Less},
        {">", TokKind::Greater},
        // unreachable fillers keep the array size fixed
        {"", TokKind::End}, {"", TokKind::End}, {"", TokKind::End},
        {"", TokKind::End}, {"", TokKind::End}, {"", TokKind::End},
        {"", TokKind::End}, {"", TokKind::End},
    }};
    for (const auto& op : kOps) {
      size_t len = std::strlen(op.text);
      if (len == 0) break;
      if (text_.compare(pos_, len, op.text) == 0) {
        TokKind k = op.kind;
        if (k == TokKind::LParen || k == TokKind::LBracket || k == TokKind::LBrace) {
          brackets_.push_back({text_[pos_], line_, column_of(pos_)});
        } else if (k == TokKind::RParen || k == TokKind::RBracket || k == TokKind::RBrace) {
          char want = (k == TokKind::RParen) ? '(' : (k == TokKind::RBracket) ? '[' : '{';
          if (brackets_.empty())
            return fail(line_, column_of(pos_),
                        std::string("unmatched '") + text_[pos_] + "'");
          if (brackets_.back().open != want)
            return fail(line_, column_of(pos_),
                        std::string("closing bracket '") + text_[pos_] +
                            "' does not match opening bracket");
          brackets_.pop_back();
        }
        pos_ += len;
        emit(k, begin, pos_, start_line);
        return true;
      }
    }
    return fail(line_, column_of(pos_), "invalid character in source");
  }
};

}  // namespace

LexResult tokenize(const SourceFile& file) {
  Lexer lexer(file.text, file.physical_lines, 1, false);
  return lexer.run();
}

LexResult tokenize_fragment(const std::string& text, int base_line) {
  // Wrap in parentheses so newlines inside the fragment are insignificant.
  std::string wrapped = "(" + text + ")";
  Lexer lexer(wrapped, 0, base_line, true);
  return lexer.run();
}

bool is_keyword(TokKind k) {
  return k >= TokKind::KwFalse && k <= TokKind::KwYield;
}

const char* tok_kind_name(TokKind k) {
  switch (k) {
    case TokKind::End: return "end of file";
    case TokKind::Newline: return "newline";
    case TokKind::Indent: return "indent";
    case TokKind::Dedent: return "dedent";
    case TokKind::Name: return "name";
    case TokKind::Number: return "number";
    case TokKind::String: return "string";
    default: return is_keyword(k) ? "keyword" : "operator";
  }
}

}  // namespace dscan::frontend
