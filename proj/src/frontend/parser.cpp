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

#include "dscan/frontend/parser.hpp"

#include <cassert>
#include <stdexcept>

#include "dscan/frontend/lexer.hpp"

namespace dscan::frontend {

namespace ast_ = ast;
using namespace ast;

namespace {

struct ParseError {
  SyntaxError err;
};

class Parser {
 public:
  explicit Parser(const std::vector<Token>& toks) : toks_(toks) {}

  std::unique_ptr<Module> parse_module() {
    auto mod = std::make_unique<Module>();
    skip_newlines();
    while (!check(TokKind::End)) {
      if (check(TokKind::Indent)) error(cur(), "unexpected indent");
      parse_stmt(mod->body);
      skip_newlines();
    }
    return mod;
  }

 private:
  const std::vector<Token>& toks_;
  size_t i_ = 0;
  int last_end_line_ = 1;

  // ------------------------------------------------------------- token plumbing

  const Token& cur() const { return toks_[i_]; }
  const Token& peek(size_t k = 1) const {
    size_t j = i_ + k;
    return j < toks_.size() ? toks_[j] : toks_.back();
  }
  const Token& advance() {
    const Token& t = toks_[i_];
    if (i_ + 1 < toks_.size()) ++i_;
    if (t.kind != TokKind::Newline && t.kind != TokKind::Indent &&
        t.kind != TokKind::Dedent && t.kind != TokKind::End)
      last_end_line_ = t.end_line;
    return t;
  }
  bool check(TokKind k) const { return cur().kind == k; }
  bool accept(TokKind k) {
    if (check(k)) {
      advance();
      return true;
    }
    return false;
  }
  const Token& expect(TokKind k, const char* what) {
    if (!check(k)) error(cur(), std::string("expected ") + what);
    return advance();
  }
  [[noreturn]] void error(const Token& t, std::string msg) const {
    throw ParseError{SyntaxError{t.line, t.col, std::move(msg)}};
  }
  void skip_newlines() {
    while (check(TokKind::Newline)) advance();
  }
  bool is_name(const char* s) const {
    return check(TokKind::Name) && cur().text == s;
  }

  template <typename T>
  std::unique_ptr<T> start() {
    auto n = std::make_unique<T>();
    n->line = cur().line;
    n->col = cur().col;
    n->end_line = cur().line;
    return n;
  }
  template <typename T>
  std::unique_ptr<T> finish(std::unique_ptr<T> n) {
    n->end_line = last_end_line_;
    return n;
  }

  static int body_end(const std::vector<StmtPtr>& body, int fallback) {
    return body.empty() ? fallback : body.back()->end_line;
  }

  // ---------------------------------------------------------------- statements

  void parse_stmt(std::vector<StmtPtr>& out) {
    switch (cur().kind) {
      case TokKind::KwIf: out.push_back(parse_if()); return;
      case TokKind::KwWhile: out.push_back(parse_while()); return;
      case TokKind::KwFor: out.push_back(parse_for(false)); return;
      case TokKind::KwTry: out.push_back(parse_try()); return;
      case TokKind::KwWith: out.push_back(parse_with(false)); return;
      case TokKind::KwDef: out.push_back(parse_def(false, {})); return;
      case TokKind::KwClass: out.push_back(parse_class({})); return;
      case TokKind::At: out.push_back(parse_decorated()); return;
      case TokKind::KwAsync: {
        advance();
        if (check(TokKind::KwDef)) out.push_back(parse_def(true, {}));
        else if (check(TokKind::KwFor)) out.push_back(parse_for(true));
        else if (check(TokKind::KwWith)) out.push_back(parse_with(true));
        else error(cur(), "expected def, for or with after async");
        return;
      }
      default: break;
    }
    if (is_name("match")) {
      size_t save = i_;
      int save_end = last_end_line_;
      try {
        out.push_back(parse_match());
        return;
      } catch (const ParseError&) {
        i_ = save;
        last_end_line_ = save_end;
      }
    }
    parse_simple_line(out);
  }

  void parse_simple_line(std::vector<StmtPtr>& out) {
    out.push_back(parse_small_stmt());
    while (accept(TokKind::Semicolon)) {
      if (check(TokKind::Newline) || check(TokKind::End)) break;
      out.push_back(parse_small_stmt());
    }
    if (!accept(TokKind::Newline) && !check(TokKind::End))
      error(cur(), "invalid syntax");
  }

  StmtPtr parse_small_stmt() {
    switch (cur().kind) {
      case TokKind::KwPass: {
        auto n = start<PassStmt>();
        advance();
        return finish(std::move(n));
      }
      case TokKind::KwBreak: {
        auto n = start<BreakStmt>();
        advance();
        return finish(std::move(n));
      }
      case TokKind::KwContinue: {
        auto n = start<ContinueStmt>();
        advance();
        return finish(std::move(n));
      }
      case TokKind::KwReturn: {
        auto n = start<ReturnStmt>();
        advance();
        if (!check(TokKind::Newline) && !check(TokKind::Semicolon) && !check(TokKind::End))
          n->value = parse_testlist_star(true);
        return finish(std::move(n));
      }
      case TokKind::KwRaise: {
        auto n = start<RaiseStmt>();
        advance();
        if (!check(TokKind::Newline) && !check(TokKind::Semicolon) && !check(TokKind::End)) {
          n->exc = parse_test();
          if (accept(TokKind::KwFrom)) n->cause = parse_test();
        }
        return finish(std::move(n));
      }
      case TokKind::KwAssert: {
        auto n = start<AssertStmt>();
        advance();
        n->test = parse_test();
        if (accept(TokKind::Comma)) n->msg = parse_test();
        return finish(std::move(n));
      }
      case TokKind::KwDel: {
        auto n = start<DeleteStmt>();
        advance();
        n->targets.push_back(parse_or_expr_chain());
        while (accept(TokKind::Comma)) {
          if (starts_expression()) n->targets.push_back(parse_or_expr_chain());
          else break;
        }
        for (auto& t : n->targets) check_target(t.get(), true);
        return finish(std::move(n));
      }
      case TokKind::KwImport: return parse_import();
      case TokKind::KwFrom: return parse_import_from();
      case TokKind::KwGlobal:
      case TokKind::KwNonlocal: {
        bool global = check(TokKind::KwGlobal);
        std::vector<std::string> names;
        auto line = cur().line;
        auto col = cur().col;
        advance();
        names.push_back(expect(TokKind::Name, "name").text);
        while (accept(TokKind::Comma))
          names.push_back(expect(TokKind::Name, "name").text);
        if (global) {
          auto n = std::make_unique<GlobalStmt>();
          n->names = std::move(names);
          n->line = line;
          n->col = col;
          n->end_line = last_end_line_;
          return n;
        }
        auto n = std::make_unique<NonlocalStmt>();
        n->names = std::move(names);
        n->line = line;
        n->col = col;
        n->end_line = last_end_line_;
        return n;
      }
      case TokKind::KwYield: {
        auto n = start<ExprStmtNode>();
        n->value = parse_yield_expr();
        return finish(std::move(n));
      }
      default: return parse_expr_statement();
    }
  }

  ExprPtr parse_assign_value() {
    if (check(TokKind::KwYield)) return parse_yield_expr();
    return parse_testlist_star(true);
  }

  StmtPtr parse_expr_statement() {
    auto first_tok = cur();
    ExprPtr first = parse_testlist_star(true);

    if (check(TokKind::Colon)) {
      advance();
      auto n = std::make_unique<AnnAssignStmt>();
      n->line = first_tok.line;
      n->col = first_tok.col;
      check_target(first.get(), false);
      if (first->kind == NodeKind::TupleExpr || first->kind == NodeKind::Starred)
        error(first_tok, "only single target allowed with annotation");
      n->target = std::move(first);
      n->annotation = parse_test();
      if (accept(TokKind::Assign)) n->value = parse_assign_value();
      n->end_line = last_end_line_;
      return n;
    }

    BinaryOp aug_op;
    if (is_aug_assign(cur().kind, aug_op)) {
      advance();
      auto n = std::make_unique<AugAssignStmt>();
      n->line = first_tok.line;
      n->col = first_tok.col;
      check_target(first.get(), false);
      if (first->kind == NodeKind::TupleExpr || first->kind == NodeKind::Starred ||
          first->kind == NodeKind::ListExpr)
        error(first_tok, "invalid augmented assignment target");
      n->target = std::move(first);
      n->op = aug_op;
      n->value = parse_assign_value();
      n->end_line = last_end_line_;
      return n;
    }

    if (check(TokKind::Assign)) {
      auto n = std::make_unique<AssignStmt>();
      n->line = first_tok.line;
      n->col = first_tok.col;
      n->targets.push_back(std::move(first));
      ExprPtr value;
      while (accept(TokKind::Assign)) {
        value = parse_assign_value();
        if (check(TokKind::Assign)) n->targets.push_back(std::move(value));
      }
      for (auto& t : n->targets) check_target(t.get(), false);
      n->value = std::move(value);
      n->end_line = last_end_line_;
      return n;
    }

    auto n = std::make_unique<ExprStmtNode>();
    n->line = first_tok.line;
    n->col = first_tok.col;
    n->value = std::move(first);
    n->end_line = last_end_line_;
    return n;
  }

  static bool is_aug_assign(TokKind k, BinaryOp& op) {
    switch (k) {
      case TokKind::PlusAssign: op = BinaryOp::Add; return true;
      case TokKind::MinusAssign: op = BinaryOp::Sub; return true;
      case TokKind::StarAssign: op = BinaryOp::Mult; return true;
      case TokKind::AtAssign: op = BinaryOp::MatMult; return true;
      case TokKind::SlashAssign: op = BinaryOp::Div; return true;
      case TokKind::DoubleSlashAssign: op = BinaryOp::FloorDiv; return true;
      case TokKind::PercentAssign: op = BinaryOp::Mod; return true;
      case TokKind::AmpAssign: op = BinaryOp::BitAnd; return true;
      case TokKind::PipeAssign: op = BinaryOp::BitOr; return true;
      case TokKind::CaretAssign: op = BinaryOp::BitXor; return true;
      case TokKind::LShiftAssign: op = BinaryOp::LShift; return true;
      case TokKind::RShiftAssign: op = BinaryOp::RShift; return true;
      case TokKind::DoubleStarAssign: op = BinaryOp::Pow; return true;
      default: return false;
    }
  }

  // Assignment-target validity; loose but rejects the obvious (1 = x).
  void check_target(Expr* e, bool delete_ctx) {
    switch (e->kind) {
      case NodeKind::Name:
      case NodeKind::Attribute:
      case NodeKind::Subscript:
        return;
      case NodeKind::Starred:
        if (delete_ctx) error_at(e, "cannot delete starred expression");
        check_target(static_cast<StarredExpr*>(e)->value.get(), delete_ctx);
        return;
      case NodeKind::TupleExpr:
        for (auto& el : static_cast<TupleExpr*>(e)->elts) check_target(el.get(), delete_ctx);
        return;
      case NodeKind::ListExpr:
        for (auto& el : static_cast<ListExpr*>(e)->elts) check_target(el.get(), delete_ctx);
        return;
      default:
        error_at(e, delete_ctx ? "cannot delete this expression"
                               : "cannot assign to this expression");
    }
  }
  [[noreturn]] void error_at(const Node* n, std::string msg) const {
    throw ParseError{SyntaxError{n->line, n->col, std::move(msg)}};
  }

  StmtPtr parse_import() {
    auto n = start<ImportStmt>();
    advance();
    do {
      Alias a;
      a.name = parse_dotted_name();
      if (accept(TokKind::KwAs)) a.asname = expect(TokKind::Name, "name").text;
      n->names.push_back(std::move(a));
    } while (accept(TokKind::Comma));
    return finish(std::move(n));
  }

  std::string parse_dotted_name() {
    std::string s = expect(TokKind::Name, "module name").text;
    while (check(TokKind::Dot)) {
      advance();
      s += '.';
      s += expect(TokKind::Name, "name").text;
    }
    return s;
  }

  StmtPtr parse_import_from() {
    auto n = start<ImportFromStmt>();
    advance();
    while (check(TokKind::Dot) || check(TokKind::Ellipsis)) {
      n->level += check(TokKind::Dot) ? 1 : 3;
      advance();
    }
    if (check(TokKind::Name)) n->module = parse_dotted_name();
    else if (n->level == 0) error(cur(), "expected module name");
    expect(TokKind::KwImport, "'import'");
    if (accept(TokKind::Star)) {
      n->is_star = true;
      return finish(std::move(n));
    }
    bool parens = accept(TokKind::LParen);
    do {
      if (parens && check(TokKind::RParen)) break;
      Alias a;
      a.name = expect(TokKind::Name, "name").text;
      if (accept(TokKind::KwAs)) a.asname = expect(TokKind::Name, "name").text;
      n->names.push_back(std::move(a));
    } while (accept(TokKind::Comma));
    if (parens) expect(TokKind::RParen, "')'");
    return finish(std::move(n));
  }

  std::vector<StmtPtr> parse_block() {
    expect(TokKind::Colon, "':'");
    std::vector<StmtPtr> body;
    if (accept(TokKind::Newline)) {
      expect(TokKind::Indent, "an indented block");
      while (!check(TokKind::Dedent) && !check(TokKind::End)) parse_stmt(body);
      expect(TokKind::Dedent, "dedent");
    } else {
      parse_simple_line(body);
    }
    if (body.empty()) error(cur(), "expected an indented block");
    return body;
  }

  StmtPtr parse_if() {
    auto n = start<IfStmt>();
    advance();
    n->test = parse_namedexpr_test();
    n->body = parse_block();
    if (check(TokKind::KwElif)) {
      // Rewrite `elif` chains as nested ifs.
      auto nested = parse_if_from_elif();
      n->orelse.push_back(std::move(nested));
    } else if (accept(TokKind::KwElse)) {
      n->orelse = parse_block();
    }
    n->end_line = body_end(n->orelse, body_end(n->body, n->line));
    return n;
  }

  StmtPtr parse_if_from_elif() {
    auto n = start<IfStmt>();
    advance();  // consumes `elif`
    n->test = parse_namedexpr_test();
    n->body = parse_block();
    if (check(TokKind::KwElif)) {
      n->orelse.push_back(parse_if_from_elif());
    } else if (accept(TokKind::KwElse)) {
      n->orelse = parse_block();
    }
    n->end_line = body_end(n->orelse, body_end(n->body, n->line));
    return n;
  }

  StmtPtr parse_while() {
    auto n = start<WhileStmt>();
    advance();
    n->test = parse_namedexpr_test();
    n->body = parse_block();
    if (accept(TokKind::KwElse)) n->orelse = parse_block();
    n->end_line = body_end(n->orelse, body_end(n->body, n->line));
    return n;
  }

  StmtPtr parse_for(bool is_async) {
    auto n = start<ForStmt>();
    advance();
    n->is_async = is_async;
    n->target = parse_target_list();
    expect(TokKind::KwIn, "'in'");
    n->iter = parse_testlist_star(false);
    n->body = parse_block();
    if (accept(TokKind::KwElse)) n->orelse = parse_block();
    n->end_line = body_end(n->orelse, body_end(n->body, n->line));
    return n;
  }

  ExprPtr parse_target_list() {
    auto first_tok = cur();
    auto parse_one = [&]() -> ExprPtr {
      if (check(TokKind::Star)) {
        auto s = start<StarredExpr>();
        advance();
        s->value = parse_primary_chain();
        return finish(std::move(s));
      }
      return parse_primary_chain();
    };
    ExprPtr first = parse_one();
    if (!check(TokKind::Comma)) {
      check_target(first.get(), false);
      return first;
    }
    auto tup = std::make_unique<TupleExpr>();
    tup->line = first_tok.line;
    tup->col = first_tok.col;
    tup->elts.push_back(std::move(first));
    while (accept(TokKind::Comma)) {
      if (!starts_expression() && !check(TokKind::Star)) break;
      tup->elts.push_back(parse_one());
    }
    tup->end_line = last_end_line_;
    check_target(tup.get(), false);
    return tup;
  }

  // A restricted expression for assignment/for targets: primary with trailers
  // or a parenthesized/bracketed target list.
  ExprPtr parse_primary_chain() { return parse_or_expr_chain(); }
  ExprPtr parse_or_expr_chain() { return parse_bitor(); }

  StmtPtr parse_try() {
    auto n = start<TryStmt>();
    advance();
    n->body = parse_block();
    while (check(TokKind::KwExcept)) {
      advance();
      ExceptHandler h;
      if (accept(TokKind::Star)) n->is_star = true;
      if (!check(TokKind::Colon)) {
        h.type = parse_test();
        if (accept(TokKind::KwAs)) h.name = expect(TokKind::Name, "name").text;
      }
      h.body = parse_block();
      n->handlers.push_back(std::move(h));
    }
    if (accept(TokKind::KwElse)) {
      if (n->handlers.empty()) error(cur(), "else without except");
      n->orelse = parse_block();
    }
    if (accept(TokKind::KwFinally)) n->finalbody = parse_block();
    if (n->handlers.empty() && n->finalbody.empty())
      error(cur(), "expected 'except' or 'finally' block");
    n->end_line = last_end_line_;
    return n;
  }

  StmtPtr parse_with(bool is_async) {
    auto n = start<WithStmt>();
    advance();
    n->is_async = is_async;
    if (check(TokKind::LParen)) {
      // Try parenthesized with-items (3.9+); fall back to an expression.
      size_t save = i_;
      int save_end = last_end_line_;
      try {
        advance();  // (
        std::vector<WithItem> items;
        do {
          if (check(TokKind::RParen)) break;
          items.push_back(parse_with_item());
        } while (accept(TokKind::Comma));
        expect(TokKind::RParen, "')'");
        if (!check(TokKind::Colon)) error(cur(), "expected ':'");
        n->items = std::move(items);
      } catch (const ParseError&) {
        i_ = save;
        last_end_line_ = save_end;
        n->items.clear();
        do {
          n->items.push_back(parse_with_item());
        } while (accept(TokKind::Comma));
      }
    } else {
      do {
        n->items.push_back(parse_with_item());
      } while (accept(TokKind::Comma));
    }
    n->body = parse_block();
    n->end_line = body_end(n->body, n->line);
    return n;
  }

  WithItem parse_with_item() {
    WithItem item;
    item.ctx = parse_test();
    if (accept(TokKind::KwAs)) {
      item.vars = parse_primary_chain();
      check_target(item.vars.get(), false);
    }
    return item;
  }

  StmtPtr parse_decorated() {
    std::vector<ExprPtr> decorators;
    auto first_tok = cur();
    while (accept(TokKind::At)) {
      decorators.push_back(parse_namedexpr_test());
      expect(TokKind::Newline, "newline after decorator");
      skip_newlines();
    }
    StmtPtr s;
    if (check(TokKind::KwDef)) {
      s = parse_def(false, std::move(decorators));
    } else if (check(TokKind::KwClass)) {
      s = parse_class(std::move(decorators));
    } else if (check(TokKind::KwAsync)) {
      advance();
      if (!check(TokKind::KwDef)) error(cur(), "expected def after async");
      s = parse_def(true, std::move(decorators));
    } else {
      error(cur(), "expected def or class after decorators");
    }
    (void)first_tok;  // spans start at the def/class keyword, not the decorator
    return s;
  }

  StmtPtr parse_def(bool is_async, std::vector<ExprPtr> decorators) {
    auto n = start<FunctionDefStmt>();
    advance();  // def
    n->is_async = is_async;
    n->decorators = std::move(decorators);
    n->name = expect(TokKind::Name, "function name").text;
    expect(TokKind::LParen, "'('");
    n->params = parse_params(TokKind::RParen, true);
    expect(TokKind::RParen, "')'");
    if (accept(TokKind::Arrow)) n->returns = parse_test();
    n->body = parse_block();
    n->end_line = body_end(n->body, n->line);
    return n;
  }

  std::vector<Param> parse_params(TokKind terminator, bool allow_annotations) {
    std::vector<Param> params;
    bool seen_star = false, seen_kwarg = false, seen_slash = false;
    while (!check(terminator)) {
      if (check(TokKind::Slash)) {
        if (seen_slash || seen_star) error(cur(), "invalid '/' in parameter list");
        advance();
        seen_slash = true;
        for (auto& p : params)
          if (p.kind == ParamKind::PositionalOrKeyword) p.kind = ParamKind::PositionalOnly;
        if (!accept(TokKind::Comma)) break;
        continue;
      }
      if (check(TokKind::Star)) {
        if (seen_star) error(cur(), "invalid '*' in parameter list");
        advance();
        seen_star = true;
        if (check(TokKind::Name)) {
          Param p;
          p.kind = ParamKind::VarArg;
          p.name = advance().text;
          if (allow_annotations && accept(TokKind::Colon)) p.annotation = parse_test();
          params.push_back(std::move(p));
        }
        if (!accept(TokKind::Comma)) break;
        continue;
      }
      if (check(TokKind::DoubleStar)) {
        advance();
        Param p;
        p.kind = ParamKind::KwArg;
        p.name = expect(TokKind::Name, "parameter name").text;
        if (allow_annotations && accept(TokKind::Colon)) p.annotation = parse_test();
        params.push_back(std::move(p));
        seen_kwarg = true;
        accept(TokKind::Comma);
        break;
      }
      Param p;
      p.kind = seen_star ? ParamKind::KeywordOnly : ParamKind::PositionalOrKeyword;
      p.name = expect(TokKind::Name, "parameter name").text;
      if (allow_annotations && accept(TokKind::Colon)) p.annotation = parse_test();
      if (accept(TokKind::Assign)) p.default_value = parse_test();
      params.push_back(std::move(p));
      if (!accept(TokKind::Comma)) break;
    }
    if (seen_kwarg && !check(terminator) && !check(TokKind::Colon))
      error(cur(), "parameter after **kwargs");
    return params;
  }

  StmtPtr parse_class(std::vector<ExprPtr> decorators) {
    auto n = start<ClassDefStmt>();
    advance();  // class
    n->decorators = std::move(decorators);
    n->name = expect(TokKind::Name, "class name").text;
    if (accept(TokKind::LParen)) {
      while (!check(TokKind::RParen)) {
        if (check(TokKind::DoubleStar)) {
          advance();
          Keyword kw;
          kw.value = parse_test();
          n->keywords.push_back(std::move(kw));
        } else if (check(TokKind::Star)) {
          auto s = start<StarredExpr>();
          advance();
          s->value = parse_test();
          n->bases.push_back(finish(std::move(s)));
        } else if (check(TokKind::Name) && peek().kind == TokKind::Assign) {
          Keyword kw;
          kw.name = advance().text;
          advance();  // =
          kw.value = parse_test();
          n->keywords.push_back(std::move(kw));
        } else {
          n->bases.push_back(parse_test());
        }
        if (!accept(TokKind::Comma)) break;
      }
      expect(TokKind::RParen, "')'");
    }
    n->body = parse_block();
    n->end_line = body_end(n->body, n->line);
    return n;
  }

  // -------------------------------------------------------------------- match

  StmtPtr parse_match() {
    auto n = start<MatchStmt>();
    advance();  // `match` name
    n->subject = parse_testlist_star(false);
    expect(TokKind::Colon, "':'");
    expect(TokKind::Newline, "newline");
    expect(TokKind::Indent, "an indented block");
    while (!check(TokKind::Dedent) && !check(TokKind::End)) {
      if (!is_name("case")) error(cur(), "expected 'case'");
      advance();
      MatchCase mc;
      mc.pattern = parse_patterns(mc.bound_names);
      if (accept(TokKind::KwIf)) mc.guard = parse_namedexpr_test();
      mc.body = parse_block();
      n->cases.push_back(std::move(mc));
    }
    expect(TokKind::Dedent, "dedent");
    if (n->cases.empty()) error(cur(), "match statement must have at least one case");
    n->end_line = last_end_line_;
    return n;
  }

  ExprPtr parse_patterns(std::vector<std::string>& bound) {
    ExprPtr first = parse_pattern(bound);
    if (!check(TokKind::Comma)) return first;
    auto tup = std::make_unique<TupleExpr>();
    tup->line = first->line;
    tup->col = first->col;
    tup->elts.push_back(std::move(first));
    while (accept(TokKind::Comma)) {
      if (check(TokKind::Colon) || check(TokKind::KwIf)) break;
      tup->elts.push_back(parse_pattern(bound));
    }
    tup->end_line = last_end_line_;
    return tup;
  }

  ExprPtr parse_pattern(std::vector<std::string>& bound) {
    ExprPtr p = parse_or_pattern(bound);
    if (accept(TokKind::KwAs)) {
      std::string name = expect(TokKind::Name, "name").text;
      if (name != "_") bound.push_back(name);
    }
    return p;
  }

  ExprPtr parse_or_pattern(std::vector<std::string>& bound) {
    ExprPtr left = parse_closed_pattern(bound);
    while (check(TokKind::Pipe)) {
      advance();
      auto b = std::make_unique<BinOpExpr>();
      b->op = BinaryOp::BitOr;
      b->line = left->line;
      b->col = left->col;
      b->left = std::move(left);
      b->right = parse_closed_pattern(bound);
      b->end_line = last_end_line_;
      left = std::move(b);
    }
    return left;
  }

  // Literal patterns must not greedily parse a full `test`: a following `if`
  // is the case guard, not a conditional expression.
  ExprPtr parse_literal_pattern() {
    if (check(TokKind::Minus)) {
      auto n = start<UnaryOpExpr>();
      advance();
      n->op = UnaryOpKind::Minus;
      n->operand = parse_literal_pattern();
      return finish(std::move(n));
    }
    if (check(TokKind::String)) return parse_strings();
    if (check(TokKind::Number)) {
      ExprPtr num = parse_atom();
      if (check(TokKind::Plus) || check(TokKind::Minus)) {
        // complex literal such as 3+4j
        BinaryOp op = check(TokKind::Plus) ? BinaryOp::Add : BinaryOp::Sub;
        advance();
        return binop_chain(std::move(num), op, parse_atom());
      }
      return num;
    }
    if (check(TokKind::KwNone) || check(TokKind::KwTrue) || check(TokKind::KwFalse))
      return parse_atom();
    error(cur(), "invalid literal pattern");
  }

  ExprPtr parse_closed_pattern(std::vector<std::string>& bound) {
    switch (cur().kind) {
      case TokKind::Number:
      case TokKind::String:
      case TokKind::KwNone:
      case TokKind::KwTrue:
      case TokKind::KwFalse:
      case TokKind::Minus:
        return parse_literal_pattern();
      case TokKind::Star: {
        auto s = start<StarredExpr>();
        advance();
        std::string name = expect(TokKind::Name, "name").text;
        auto nm = std::make_unique<NameExpr>();
        nm->id = name;
        if (name != "_") bound.push_back(name);
        s->value = std::move(nm);
        return finish(std::move(s));
      }
      case TokKind::LParen:
      case TokKind::LBracket: {
        bool paren = check(TokKind::LParen);
        auto t = paren ? static_cast<ExprPtr>(start<TupleExpr>())
                       : static_cast<ExprPtr>(start<ListExpr>());
        advance();
        TokKind close = paren ? TokKind::RParen : TokKind::RBracket;
        std::vector<ExprPtr> elts;
        while (!check(close)) {
          elts.push_back(parse_pattern(bound));
          if (!accept(TokKind::Comma)) break;
        }
        expect(close, "closing bracket");
        if (paren && elts.size() == 1) return std::move(elts[0]);  // group pattern
        if (paren) static_cast<TupleExpr*>(t.get())->elts = std::move(elts);
        else static_cast<ListExpr*>(t.get())->elts = std::move(elts);
        t->end_line = last_end_line_;
        return t;
      }
      case TokKind::LBrace: {
        auto d = start<DictExpr>();
        advance();
        while (!check(TokKind::RBrace)) {
          if (check(TokKind::DoubleStar)) {
            advance();
            std::string name = expect(TokKind::Name, "name").text;
            if (name != "_") bound.push_back(name);
            auto s = std::make_unique<StarredExpr>();
            s->double_star = true;
            auto nm = std::make_unique<NameExpr>();
            nm->id = name;
            s->value = std::move(nm);
            d->keys.push_back(nullptr);
            d->values.push_back(std::move(s));
          } else {
            // key: literal or dotted value pattern
            if (check(TokKind::Name)) {
              auto nm = start<NameExpr>();
              nm->id = advance().text;
              ExprPtr key = finish(std::move(nm));
              while (check(TokKind::Dot)) {
                advance();
                auto a = std::make_unique<AttributeExpr>();
                a->line = key->line;
                a->col = key->col;
                a->value = std::move(key);
                a->attr = expect(TokKind::Name, "attribute name").text;
                a->end_line = last_end_line_;
                key = std::move(a);
              }
              d->keys.push_back(std::move(key));
            } else {
              d->keys.push_back(parse_literal_pattern());
            }
            expect(TokKind::Colon, "':'");
            d->values.push_back(parse_pattern(bound));
          }
          if (!accept(TokKind::Comma)) break;
        }
        expect(TokKind::RBrace, "'}'");
        return finish(std::move(d));
      }
      case TokKind::Name: {
        // Capture, wildcard, dotted value pattern or class pattern.
        auto nm = start<NameExpr>();
        nm->id = advance().text;
        ExprPtr e = finish(std::move(nm));
        bool dotted = false;
        while (check(TokKind::Dot)) {
          advance();
          auto a = std::make_unique<AttributeExpr>();
          a->line = e->line;
          a->col = e->col;
          a->value = std::move(e);
          a->attr = expect(TokKind::Name, "attribute name").text;
          a->end_line = last_end_line_;
          e = std::move(a);
          dotted = true;
        }
        if (check(TokKind::LParen)) {
          auto call = std::make_unique<CallExpr>();
          call->line = e->line;
          call->col = e->col;
          call->func = std::move(e);
          advance();
          while (!check(TokKind::RParen)) {
            if (check(TokKind::Name) && peek().kind == TokKind::Assign) {
              Keyword kw;
              kw.name = advance().text;
              advance();
              kw.value = parse_pattern(bound);
              call->keywords.push_back(std::move(kw));
            } else {
              call->args.push_back(parse_pattern(bound));
            }
            if (!accept(TokKind::Comma)) break;
          }
          expect(TokKind::RParen, "')'");
          call->end_line = last_end_line_;
          return call;
        }
        if (!dotted) {
          auto* name_node = static_cast<NameExpr*>(e.get());
          if (name_node->id != "_") bound.push_back(name_node->id);
        }
        return e;
      }
      default:
        error(cur(), "invalid pattern");
    }
  }

  // ------------------------------------------------------------- expressions

  bool starts_expression() const {
    switch (cur().kind) {
      case TokKind::Name:
      case TokKind::Number:
      case TokKind::String:
      case TokKind::KwNone:
      case TokKind::KwTrue:
      case TokKind::KwFalse:
      case TokKind::KwNot:
      case TokKind::KwLambda:
      case TokKind::KwAwait:
      case TokKind::LParen:
      case TokKind::LBracket:
      case TokKind::LBrace:
      case TokKind::Plus:
      case TokKind::Minus:
      case TokKind::Tilde:
      case TokKind::Ellipsis:
        return true;
      default:
        return false;
    }
  }

  // testlist_star_expr: (test in a possibly star-studded comma list).
  ExprPtr parse_testlist_star(bool allow_walrus) {
    auto first_tok = cur();
    ExprPtr first = parse_star_item(allow_walrus);
    if (!check(TokKind::Comma)) return first;
    auto tup = std::make_unique<TupleExpr>();
    tup->line = first_tok.line;
    tup->col = first_tok.col;
    tup->elts.push_back(std::move(first));
    while (accept(TokKind::Comma)) {
      if (!starts_expression() && !check(TokKind::Star)) break;
      tup->elts.push_back(parse_star_item(allow_walrus));
    }
    tup->end_line = last_end_line_;
    return tup;
  }

  ExprPtr parse_star_item(bool allow_walrus) {
    if (check(TokKind::Star)) {
      auto s = start<StarredExpr>();
      advance();
      s->value = parse_bitor();
      return finish(std::move(s));
    }
    return allow_walrus ? parse_namedexpr_test() : parse_test();
  }

  ExprPtr parse_namedexpr_test() {
    ExprPtr e = parse_test();
    if (check(TokKind::ColonAssign)) {
      if (e->kind != NodeKind::Name)
        error(cur(), "cannot use assignment expression with this target");
      advance();
      auto n = std::make_unique<NamedExprExpr>();
      n->line = e->line;
      n->col = e->col;
      n->target = std::move(e);
      n->value = parse_test();
      n->end_line = last_end_line_;
      return n;
    }
    return e;
  }

  ExprPtr parse_test() {
    if (check(TokKind::KwLambda)) return parse_lambda(false);
    ExprPtr body = parse_or_test();
    if (check(TokKind::KwIf)) {
      advance();
      auto n = std::make_unique<IfExpExpr>();
      n->line = body->line;
      n->col = body->col;
      n->body = std::move(body);
      n->test = parse_or_test();
      expect(TokKind::KwElse, "'else'");
      n->orelse = parse_test();
      n->end_line = last_end_line_;
      return n;
    }
    return body;
  }

  // test without the conditional tail; used in comprehension conditions.
  ExprPtr parse_test_nocond() {
    if (check(TokKind::KwLambda)) return parse_lambda(true);
    return parse_or_test();
  }

  ExprPtr parse_lambda(bool nocond) {
    auto n = start<LambdaExpr>();
    advance();
    if (!check(TokKind::Colon)) n->params = parse_params(TokKind::Colon, false);
    expect(TokKind::Colon, "':'");
    n->body = nocond ? parse_test_nocond() : parse_test();
    return finish(std::move(n));
  }

  ExprPtr parse_or_test() {
    ExprPtr left = parse_and_test();
    if (!check(TokKind::KwOr)) return left;
    auto n = std::make_unique<BoolOpExpr>();
    n->is_and = false;
    n->line = left->line;
    n->col = left->col;
    n->values.push_back(std::move(left));
    while (accept(TokKind::KwOr)) n->values.push_back(parse_and_test());
    n->end_line = last_end_line_;
    return n;
  }

  ExprPtr parse_and_test() {
    ExprPtr left = parse_not_test();
    if (!check(TokKind::KwAnd)) return left;
    auto n = std::make_unique<BoolOpExpr>();
    n->is_and = true;
    n->line = left->line;
    n->col = left->col;
    n->values.push_back(std::move(left));
    while (accept(TokKind::KwAnd)) n->values.push_back(parse_not_test());
    n->end_line = last_end_line_;
    return n;
  }

  ExprPtr parse_not_test() {
    if (check(TokKind::KwNot)) {
      auto n = start<UnaryOpExpr>();
      advance();
      n->op = UnaryOpKind::Not;
      n->operand = parse_not_test();
      return finish(std::move(n));
    }
    return parse_comparison();
  }

  ExprPtr parse_comparison() {
    ExprPtr left = parse_bitor();
    std::vector<CmpOp> ops;
    std::vector<ExprPtr> comparators;
    for (;;) {
      CmpOp op;
      if (check(TokKind::Less)) op = CmpOp::Lt;
      else if (check(TokKind::Greater)) op = CmpOp::Gt;
      else if (check(TokKind::LessEq)) op = CmpOp::LtE;
      else if (check(TokKind::GreaterEq)) op = CmpOp::GtE;
      else if (check(TokKind::EqEq)) op = CmpOp::Eq;
      else if (check(TokKind::NotEq)) op = CmpOp::NotEq;
      else if (check(TokKind::KwIn)) op = CmpOp::In;
      else if (check(TokKind::KwIs)) op = peek().kind == TokKind::KwNot ? CmpOp::IsNot : CmpOp::Is;
      else if (check(TokKind::KwNot) && peek().kind == TokKind::KwIn) op = CmpOp::NotIn;
      else break;
      if (op == CmpOp::IsNot || op == CmpOp::NotIn) {
        advance();
        advance();
      } else {
        advance();
      }
      ops.push_back(op);
      comparators.push_back(parse_bitor());
    }
    if (ops.empty()) return left;
    auto n = std::make_unique<CompareExpr>();
    n->line = left->line;
    n->col = left->col;
    n->left = std::move(left);
    n->ops = std::move(ops);
    n->comparators = std::move(comparators);
    n->end_line = last_end_line_;
    return n;
  }

  ExprPtr binop_chain(ExprPtr left, BinaryOp op, ExprPtr right) {
    auto n = std::make_unique<BinOpExpr>();
    n->op = op;
    n->line = left->line;
    n->col = left->col;
    n->left = std::move(left);
    n->right = std::move(right);
    n->end_line = last_end_line_;
    return n;
  }

  ExprPtr parse_bitor() {
    ExprPtr left = parse_bitxor();
    while (check(TokKind::Pipe)) {
      advance();
      left = binop_chain(std::move(left), BinaryOp::BitOr, parse_bitxor());
    }
    return left;
  }
  ExprPtr parse_bitxor() {
    ExprPtr left = parse_bitand();
    while (check(TokKind::Caret)) {
      advance();
      left = binop_chain(std::move(left), BinaryOp::BitXor, parse_bitand());
    }
    return left;
  }
  ExprPtr parse_bitand() {
    ExprPtr left = parse_shift();
    while (check(TokKind::Amp)) {
      advance();
      left = binop_chain(std::move(left), BinaryOp::BitAnd, parse_shift());
    }
    return left;
  }
  ExprPtr parse_shift() {
    ExprPtr left = parse_arith();
    for (;;) {
      if (check(TokKind::LShift)) {
        advance();
        left = binop_chain(std::move(left), BinaryOp::LShift, parse_arith());
      } else if (check(TokKind::RShift)) {
        advance();
        left = binop_chain(std::move(left), BinaryOp::RShift, parse_arith());
      } else {
        return left;
      }
    }
  }
  ExprPtr parse_arith() {
    ExprPtr left = parse_term();
    for (;;) {
      if (check(TokKind::Plus)) {
        advance();
        left = binop_chain(std::move(left), BinaryOp::Add, parse_term());
      } else if (check(TokKind::Minus)) {
        advance();
        left = binop_chain(std::move(left), BinaryOp::Sub, parse_term());
      } else {
        return left;
      }
    }
  }
  ExprPtr parse_term() {
    ExprPtr left = parse_factor();
    for (;;) {
      BinaryOp op;
      if (check(TokKind::Star)) op = BinaryOp::Mult;
      else if (check(TokKind::At)) op = BinaryOp::MatMult;
      else if (check(TokKind::Slash)) op = BinaryOp::Div;
      else if (check(TokKind::DoubleSlash)) op = BinaryOp::FloorDiv;
      else if (check(TokKind::Percent)) op = BinaryOp::Mod;
      else return left;
      advance();
      left = binop_chain(std::move(left), op, parse_factor());
    }
  }
  ExprPtr parse_factor() {
    UnaryOpKind op;
    if (check(TokKind::Plus)) op = UnaryOpKind::Plus;
    else if (check(TokKind::Minus)) op = UnaryOpKind::Minus;
    else if (check(TokKind::Tilde)) op = UnaryOpKind::Invert;
    else return parse_power();
    auto n = start<UnaryOpExpr>();
    advance();
    n->op = op;
    n->operand = parse_factor();
    return finish(std::move(n));
  }
  ExprPtr parse_power() {
    ExprPtr base = parse_await_primary();
    if (check(TokKind::DoubleStar)) {
      advance();
      return binop_chain(std::move(base), BinaryOp::Pow, parse_factor());
    }
    return base;
  }
  ExprPtr parse_await_primary() {
    if (check(TokKind::KwAwait)) {
      auto n = start<AwaitExpr>();
      advance();
      n->value = parse_primary();
      return finish(std::move(n));
    }
    return parse_primary();
  }

  ExprPtr parse_primary() {
    ExprPtr e = parse_atom();
    for (;;) {
      if (check(TokKind::Dot)) {
        advance();
        auto a = std::make_unique<AttributeExpr>();
        a->line = e->line;
        a->col = e->col;
        a->value = std::move(e);
        a->attr = expect(TokKind::Name, "attribute name").text;
        a->end_line = last_end_line_;
        e = std::move(a);
      } else if (check(TokKind::LParen)) {
        e = parse_call(std::move(e));
      } else if (check(TokKind::LBracket)) {
        advance();
        auto s = std::make_unique<SubscriptExpr>();
        s->line = e->line;
        s->col = e->col;
        s->value = std::move(e);
        s->slice = parse_subscript_list();
        expect(TokKind::RBracket, "']'");
        s->end_line = last_end_line_;
        e = std::move(s);
      } else {
        return e;
      }
    }
  }

  ExprPtr parse_call(ExprPtr func) {
    auto call = std::make_unique<CallExpr>();
    call->line = func->line;
    call->col = func->col;
    call->func = std::move(func);
    advance();  // (
    bool first = true;
    while (!check(TokKind::RParen)) {
      if (check(TokKind::DoubleStar)) {
        advance();
        Keyword kw;
        kw.value = parse_test();
        call->keywords.push_back(std::move(kw));
      } else if (check(TokKind::Star)) {
        auto s = start<StarredExpr>();
        advance();
        s->value = parse_test();
        call->args.push_back(finish(std::move(s)));
      } else if (check(TokKind::Name) && peek().kind == TokKind::Assign) {
        Keyword kw;
        kw.name = advance().text;
        advance();  // =
        kw.value = parse_test();
        call->keywords.push_back(std::move(kw));
      } else {
        ExprPtr arg = parse_namedexpr_test();
        if (first && (check(TokKind::KwFor) ||
                      (check(TokKind::KwAsync) && peek().kind == TokKind::KwFor))) {
          auto gen = std::make_unique<GeneratorExpExpr>();
          gen->line = arg->line;
          gen->col = arg->col;
          gen->elt = std::move(arg);
          gen->generators = parse_comprehension_clauses();
          gen->end_line = last_end_line_;
          call->args.push_back(std::move(gen));
          expect(TokKind::RParen, "')'");
          call->end_line = last_end_line_;
          return call;
        }
        call->args.push_back(std::move(arg));
      }
      first = false;
      if (!accept(TokKind::Comma)) break;
    }
    expect(TokKind::RParen, "')'");
    call->end_line = last_end_line_;
    return call;
  }

  ExprPtr parse_subscript_list() {
    auto first_tok = cur();
    std::vector<ExprPtr> items;
    bool saw_comma = false;
    do {
      if (check(TokKind::RBracket)) break;
      items.push_back(parse_subscript_item());
      if (check(TokKind::Comma)) saw_comma = true;
    } while (accept(TokKind::Comma));
    if (items.empty()) error(cur(), "empty subscript");
    if (items.size() == 1 && !saw_comma) return std::move(items[0]);
    auto tup = std::make_unique<TupleExpr>();
    tup->line = first_tok.line;
    tup->col = first_tok.col;
    tup->elts = std::move(items);
    tup->end_line = last_end_line_;
    return tup;
  }

  ExprPtr parse_subscript_item() {
    if (check(TokKind::Star)) {
      auto s = start<StarredExpr>();
      advance();
      s->value = parse_bitor();
      return finish(std::move(s));
    }
    ExprPtr lower;
    if (!check(TokKind::Colon)) {
      lower = parse_namedexpr_test();
      if (!check(TokKind::Colon)) return lower;
    }
    auto slice = std::make_unique<SliceExpr>();
    slice->line = lower ? lower->line : cur().line;
    slice->col = lower ? lower->col : cur().col;
    slice->lower = std::move(lower);
    expect(TokKind::Colon, "':'");
    if (!check(TokKind::Colon) && !check(TokKind::Comma) && !check(TokKind::RBracket))
      slice->upper = parse_test();
    if (accept(TokKind::Colon)) {
      if (!check(TokKind::Comma) && !check(TokKind::RBracket))
        slice->step = parse_test();
    }
    slice->end_line = last_end_line_;
    return slice;
  }

  std::vector<Comprehension> parse_comprehension_clauses() {
    std::vector<Comprehension> gens;
    for (;;) {
      bool is_async = false;
      if (check(TokKind::KwAsync) && peek().kind == TokKind::KwFor) {
        advance();
        is_async = true;
      }
      if (!accept(TokKind::KwFor)) break;
      Comprehension c;
      c.is_async = is_async;
      c.target = parse_target_list();
      expect(TokKind::KwIn, "'in'");
      c.iter = parse_or_test();
      while (accept(TokKind::KwIf)) c.ifs.push_back(parse_test_nocond());
      gens.push_back(std::move(c));
      if (!check(TokKind::KwFor) &&
          !(check(TokKind::KwAsync) && peek().kind == TokKind::KwFor))
        break;
    }
    if (gens.empty()) error(cur(), "expected 'for' in comprehension");
    return gens;
  }

  bool at_comprehension_start() const {
    return check(TokKind::KwFor) ||
           (check(TokKind::KwAsync) && peek().kind == TokKind::KwFor);
  }

  ExprPtr parse_atom() {
    switch (cur().kind) {
      case TokKind::Name: {
        auto n = start<NameExpr>();
        n->id = advance().text;
        return finish(std::move(n));
      }
      case TokKind::Number: {
        auto n = start<ConstantExpr>();
        n->text = advance().text;
        if (n->text.find('j') != std::string::npos || n->text.find('J') != std::string::npos)
          n->ckind = ConstKind::Complex;
        else if (n->text.size() > 1 && (n->text[1] == 'x' || n->text[1] == 'X' ||
                                        n->text[1] == 'o' || n->text[1] == 'O' ||
                                        n->text[1] == 'b' || n->text[1] == 'B') &&
                 n->text[0] == '0')
          n->ckind = ConstKind::Int;
        else if (n->text.find('.') != std::string::npos ||
                 n->text.find('e') != std::string::npos ||
                 n->text.find('E') != std::string::npos)
          n->ckind = ConstKind::Float;
        else
          n->ckind = ConstKind::Int;
        return finish(std::move(n));
      }
      case TokKind::String: return parse_strings();
      case TokKind::KwNone: {
        auto n = start<ConstantExpr>();
        n->ckind = ConstKind::None_;
        n->text = advance().text;
        return finish(std::move(n));
      }
      case TokKind::KwTrue: {
        auto n = start<ConstantExpr>();
        n->ckind = ConstKind::True_;
        n->text = advance().text;
        return finish(std::move(n));
      }
      case TokKind::KwFalse: {
        auto n = start<ConstantExpr>();
        n->ckind = ConstKind::False_;
        n->text = advance().text;
        return finish(std::move(n));
      }
      case TokKind::Ellipsis: {
        auto n = start<ConstantExpr>();
        n->ckind = ConstKind::Ellipsis_;
        n->text = advance().text;
        return finish(std::move(n));
      }
      case TokKind::LParen: return parse_paren_atom();
      case TokKind::LBracket: return parse_list_atom();
      case TokKind::LBrace: return parse_brace_atom();
      default:
        error(cur(), std::string("invalid syntax (unexpected ") +
                         tok_kind_name(cur().kind) + ")");
    }
  }

  ExprPtr parse_paren_atom() {
    auto open = cur();
    advance();  // (
    if (check(TokKind::RParen)) {
      auto t = std::make_unique<TupleExpr>();
      t->line = open.line;
      t->col = open.col;
      advance();
      t->end_line = last_end_line_;
      return t;
    }
    if (check(TokKind::KwYield)) {
      ExprPtr y = parse_yield_expr();
      expect(TokKind::RParen, "')'");
      return y;
    }
    ExprPtr first = parse_star_item(true);
    if (at_comprehension_start()) {
      auto gen = std::make_unique<GeneratorExpExpr>();
      gen->line = open.line;
      gen->col = open.col;
      gen->elt = std::move(first);
      gen->generators = parse_comprehension_clauses();
      expect(TokKind::RParen, "')'");
      gen->end_line = last_end_line_;
      return gen;
    }
    if (check(TokKind::Comma)) {
      auto tup = std::make_unique<TupleExpr>();
      tup->line = open.line;
      tup->col = open.col;
      tup->elts.push_back(std::move(first));
      while (accept(TokKind::Comma)) {
        if (check(TokKind::RParen)) break;
        tup->elts.push_back(parse_star_item(true));
      }
      expect(TokKind::RParen, "')'");
      tup->end_line = last_end_line_;
      return tup;
    }
    expect(TokKind::RParen, "')'");
    first->end_line = last_end_line_;
    return first;  // grouped expression
  }

  ExprPtr parse_list_atom() {
    auto open = cur();
    advance();  // [
    auto lst = std::make_unique<ListExpr>();
    lst->line = open.line;
    lst->col = open.col;
    if (check(TokKind::RBracket)) {
      advance();
      lst->end_line = last_end_line_;
      return lst;
    }
    ExprPtr first = parse_star_item(true);
    if (at_comprehension_start()) {
      auto comp = std::make_unique<ListCompExpr>();
      comp->line = open.line;
      comp->col = open.col;
      comp->elt = std::move(first);
      comp->generators = parse_comprehension_clauses();
      expect(TokKind::RBracket, "']'");
      comp->end_line = last_end_line_;
      return comp;
    }
    lst->elts.push_back(std::move(first));
    while (accept(TokKind::Comma)) {
      if (check(TokKind::RBracket)) break;
      lst->elts.push_back(parse_star_item(true));
    }
    expect(TokKind::RBracket, "']'");
    lst->end_line = last_end_line_;
    return lst;
  }

  ExprPtr parse_brace_atom() {
    auto open = cur();
    advance();  // {
    if (check(TokKind::RBrace)) {
      auto d = std::make_unique<DictExpr>();
      d->line = open.line;
      d->col = open.col;
      advance();
      d->end_line = last_end_line_;
      return d;
    }
    if (check(TokKind::DoubleStar)) {
      auto d = std::make_unique<DictExpr>();
      d->line = open.line;
      d->col = open.col;
      parse_dict_rest(*d, nullptr, nullptr);
      d->end_line = last_end_line_;
      return d;
    }
    ExprPtr first = parse_star_item(true);
    if (check(TokKind::Colon)) {
      advance();
      ExprPtr value = parse_test();
      if (at_comprehension_start()) {
        auto comp = std::make_unique<DictCompExpr>();
        comp->line = open.line;
        comp->col = open.col;
        comp->key = std::move(first);
        comp->value = std::move(value);
        comp->generators = parse_comprehension_clauses();
        expect(TokKind::RBrace, "'}'");
        comp->end_line = last_end_line_;
        return comp;
      }
      auto d = std::make_unique<DictExpr>();
      d->line = open.line;
      d->col = open.col;
      parse_dict_rest(*d, std::move(first), std::move(value));
      d->end_line = last_end_line_;
      return d;
    }
    if (at_comprehension_start()) {
      auto comp = std::make_unique<SetCompExpr>();
      comp->line = open.line;
      comp->col = open.col;
      comp->elt = std::move(first);
      comp->generators = parse_comprehension_clauses();
      expect(TokKind::RBrace, "'}'");
      comp->end_line = last_end_line_;
      return comp;
    }
    auto s = std::make_unique<SetExpr>();
    s->line = open.line;
    s->col = open.col;
    s->elts.push_back(std::move(first));
    while (accept(TokKind::Comma)) {
      if (check(TokKind::RBrace)) break;
      s->elts.push_back(parse_star_item(true));
    }
    expect(TokKind::RBrace, "'}'");
    s->end_line = last_end_line_;
    return s;
  }

  void parse_dict_rest(DictExpr& d, ExprPtr first_key, ExprPtr first_value) {
    bool have_first = first_key != nullptr;
    if (have_first) {
      d.keys.push_back(std::move(first_key));
      d.values.push_back(std::move(first_value));
      if (!accept(TokKind::Comma)) {
        expect(TokKind::RBrace, "'}'");
        return;
      }
    }
    while (!check(TokKind::RBrace)) {
      if (check(TokKind::DoubleStar)) {
        advance();
        d.keys.push_back(nullptr);
        d.values.push_back(parse_bitor());
      } else {
        d.keys.push_back(parse_test());
        expect(TokKind::Colon, "':'");
        d.values.push_back(parse_test());
      }
      if (!accept(TokKind::Comma)) break;
    }
    expect(TokKind::RBrace, "'}'");
  }

  ExprPtr parse_yield_expr() {
    auto n = start<YieldExpr>();
    advance();  // yield
    if (accept(TokKind::KwFrom)) {
      auto yf = std::make_unique<YieldFromExpr>();
      yf->line = n->line;
      yf->col = n->col;
      yf->value = parse_test();
      yf->end_line = last_end_line_;
      return yf;
    }
    if (starts_expression() || check(TokKind::Star))
      n->value = parse_testlist_star(false);
    return finish(std::move(n));
  }

  // ----------------------------------------------------------------- strings

  ExprPtr parse_strings() {
    auto first_tok = cur();
    std::vector<Token> pieces;
    while (check(TokKind::String)) pieces.push_back(advance());
    bool any_fstring = false;
    bool any_bytes = false;
    for (const auto& p : pieces) {
      any_fstring |= p.sflags.fstring;
      any_bytes |= p.sflags.bytes;
    }
    if (!any_fstring) {
      auto n = std::make_unique<ConstantExpr>();
      n->ckind = any_bytes ? ConstKind::Bytes : ConstKind::Str;
      n->text = first_tok.text;
      n->line = first_tok.line;
      n->col = first_tok.col;
      n->end_line = pieces.back().end_line;
      return n;
    }
    auto fs = std::make_unique<FStringExpr>();
    fs->line = first_tok.line;
    fs->col = first_tok.col;
    fs->end_line = pieces.back().end_line;
    for (const auto& p : pieces) {
      std::string body = p.text.substr(p.body_begin, p.body_end - p.body_begin);
      if (!p.sflags.fstring || p.sflags.raw) {
        // Raw f-string fields still apply; raw affects only escapes, which we
        // do not decode. Treat raw f-strings like plain f-strings.
      }
      if (!p.sflags.fstring) {
        auto lit = std::make_unique<ConstantExpr>();
        lit->ckind = ConstKind::Str;
        lit->text = body;
        lit->line = p.line;
        lit->end_line = p.end_line;
        fs->parts.push_back(std::move(lit));
        continue;
      }
      append_fstring_parts(*fs, body, p.line);
    }
    return fs;
  }

  // Splits an f-string body into literal chunks and replacement-field
  // expressions. Scanner confusion degrades the field to literal text; it
  // never fails the parse.
  void append_fstring_parts(FStringExpr& fs, const std::string& body, int line) {
    size_t i = 0;
    std::string literal;
    auto flush_literal = [&] {
      if (literal.empty()) return;
      auto lit = std::make_unique<ConstantExpr>();
      lit->ckind = ConstKind::Str;
      lit->text = literal;
      lit->line = line;
      lit->end_line = line;
      fs.parts.push_back(std::move(lit));
      literal.clear();
    };
    while (i < body.size()) {
      char c = body[i];
      if (c == '{' && i + 1 < body.size() && body[i + 1] == '{') {
        literal += '{';
        i += 2;
        continue;
      }
      if (c == '}' && i + 1 < body.size() && body[i + 1] == '}') {
        literal += '}';
        i += 2;
        continue;
      }
      if (c != '{') {
        literal += c;
        if (c == '\n') ++line;
        ++i;
        continue;
      }
      // Replacement field.
      size_t expr_begin = i + 1;
      size_t j = expr_begin;
      int depth = 0;
      size_t expr_end = std::string::npos;
      size_t format_begin = std::string::npos;
      bool confused = false;
      while (j < body.size()) {
        char d = body[j];
        if (d == '(' || d == '[' || d == '{') {
          ++depth;
        } else if (d == ')' || d == ']' || d == '}') {
          if (d == '}' && depth == 0) {
            if (expr_end == std::string::npos) expr_end = j;
            break;
          }
          --depth;
          if (depth < 0) {
            confused = true;
            break;
          }
        } else if ((d == '\'' || d == '"') && depth >= 0) {
          char q = d;
          ++j;
          while (j < body.size() && body[j] != q) ++j;
          if (j >= body.size()) {
            confused = true;
            break;
          }
        } else if (depth == 0 && d == '!') {
          if (j + 1 < body.size() && body[j + 1] == '=') {
            ++j;  // != comparison
          } else if (j + 1 < body.size() &&
                     (body[j + 1] == 'r' || body[j + 1] == 's' || body[j + 1] == 'a') &&
                     j + 2 < body.size() && (body[j + 2] == '}' || body[j + 2] == ':')) {
            if (expr_end == std::string::npos) expr_end = j;
            j += 2;
            continue;
          }
        } else if (depth == 0 && d == ':') {
          if (expr_end == std::string::npos) expr_end = j;
          format_begin = j + 1;
          // Skip the format spec, tracking nested fields.
          int fdepth = 0;
          ++j;
          while (j < body.size()) {
            char e = body[j];
            if (e == '{') ++fdepth;
            else if (e == '}') {
              if (fdepth == 0) break;
              --fdepth;
            }
            ++j;
          }
          break;
        } else if (depth == 0 && d == '=' && j + 1 < body.size() &&
                   (body[j + 1] == '}' || body[j + 1] == ':' || body[j + 1] == '!') &&
                   j > expr_begin && body[j - 1] != '=' && body[j - 1] != '!' &&
                   body[j - 1] != '<' && body[j - 1] != '>') {
          if (expr_end == std::string::npos) expr_end = j;
        }
        ++j;
      }
      if (confused || j >= body.size() || expr_end == std::string::npos) {
        literal += c;
        ++i;
        continue;
      }
      std::string expr_text = body.substr(expr_begin, expr_end - expr_begin);
      ExprPtr parsed = try_parse_fragment(expr_text, line);
      if (parsed) {
        flush_literal();
        fs.parts.push_back(std::move(parsed));
      } else {
        literal += body.substr(i, j + 1 - i);
      }
      // Nested fields inside the format spec.
      if (format_begin != std::string::npos && format_begin < j) {
        std::string spec = body.substr(format_begin, j - format_begin);
        size_t k = 0;
        while (k < spec.size()) {
          if (spec[k] == '{') {
            size_t close = spec.find('}', k + 1);
            if (close == std::string::npos) break;
            ExprPtr nested = try_parse_fragment(spec.substr(k + 1, close - k - 1), line);
            if (nested) {
              flush_literal();
              fs.parts.push_back(std::move(nested));
            }
            k = close + 1;
          } else {
            ++k;
          }
        }
      }
      for (size_t b = i; b <= j && b < body.size(); ++b)
        if (body[b] == '\n') ++line;
      i = j + 1;
    }
    flush_literal();
  }

  ExprPtr try_parse_fragment(const std::string& text, int line) {
    if (text.empty()) return nullptr;
    LexResult lex = tokenize_fragment(text, line);
    if (lex.error) return nullptr;
    try {
      Parser sub(lex.tokens);
      ExprPtr e = sub.parse_testlist_star(true);
      if (!sub.check(TokKind::Newline) && !sub.check(TokKind::End)) return nullptr;
      return e;
    } catch (const ParseError&) {
      return nullptr;
    }
  }
};

}  // namespace

ParseResult parse_tokens(const std::vector<Token>& tokens) {
  ParseResult res;
  if (tokens.empty()) {
    res.error = SyntaxError{1, 0, "empty token stream"};
    return res;
  }
  try {
    Parser p(tokens);
    res.module = p.parse_module();
  } catch (const ParseError& e) {
    res.error = e.err;
  }
  return res;
}

}  // namespace dscan::frontend

// ------------------------------------------------------------------ ast utils

namespace dscan::frontend::ast {

const ConstantExpr* docstring_of(const std::vector<StmtPtr>& body) {
  if (body.empty()) return nullptr;
  const auto* es = as<ExprStmtNode>(body.front().get());
  if (!es) return nullptr;
  const auto* c = as<ConstantExpr>(es->value.get());
  if (!c || c->ckind != ConstKind::Str) return nullptr;
  return c;
}

std::string expr_to_text(const Expr* e) {
  if (!e) return "?";
  switch (e->kind) {
    case NodeKind::Name:
      return static_cast<const NameExpr*>(e)->id;
    case NodeKind::Attribute: {
      const auto* a = static_cast<const AttributeExpr*>(e);
      return expr_to_text(a->value.get()) + "." + a->attr;
    }
    case NodeKind::Subscript: {
      const auto* s = static_cast<const SubscriptExpr*>(e);
      return expr_to_text(s->value.get()) + "[...]";
    }
    case NodeKind::Call: {
      const auto* c = static_cast<const CallExpr*>(e);
      return expr_to_text(c->func.get()) + "(...)";
    }
    case NodeKind::Constant:
      return static_cast<const ConstantExpr*>(e)->text;
    case NodeKind::Starred:
      return "*" + expr_to_text(static_cast<const StarredExpr*>(e)->value.get());
    default:
      return "<expr>";
  }
}

}  // namespace dscan::frontend::ast
