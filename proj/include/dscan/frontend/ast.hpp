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

#ifndef DSCAN_FRONTEND_AST_HPP
#define DSCAN_FRONTEND_AST_HPP

#include <memory>
#include <string>
#include <vector>

namespace dscan::frontend::ast {

enum class NodeKind : uint8_t {
  // Expressions
  Name, Attribute, Subscript, Call, Constant, FString,
  TupleExpr, ListExpr, SetExpr, DictExpr, Starred,
  BinOp, UnaryOp, BoolOp, Compare, Lambda, IfExp,
  ListComp, SetComp, DictComp, GeneratorExp,
  Await, Yield, YieldFrom, NamedExpr, Slice,
  // Statements
  ExprStmt, Assign, AugAssign, AnnAssign,
  Return, Pass, Break, Continue, Raise, Assert, Delete,
  Import, ImportFrom, Global, Nonlocal,
  If, While, For, With, Try, FunctionDef, ClassDef, Match,
};

struct Node {
  NodeKind kind;
  int line = 0;      // 1-based first line
  int col = 0;       // 0-based column
  int end_line = 0;  // 1-based last line covered by this node

 protected:
  explicit Node(NodeKind k) : kind(k) {}
};

struct Expr : Node {
 protected:
  using Node::Node;
};
struct Stmt : Node {
 protected:
  using Node::Node;
};

using ExprPtr = std::unique_ptr<Expr>;
using StmtPtr = std::unique_ptr<Stmt>;

template <typename T>
T* as(Node* n) {
  return (n && n->kind == T::K) ? static_cast<T*>(n) : nullptr;
}
template <typename T>
const T* as(const Node* n) {
  return (n && n->kind == T::K) ? static_cast<const T*>(n) : nullptr;
}

// ---------------------------------------------------------------- expressions

struct NameExpr : Expr {
  static constexpr NodeKind K = NodeKind::Name;
  std::string id;
  NameExpr() : Expr(K) {}
};

struct AttributeExpr : Expr {
  static constexpr NodeKind K = NodeKind::Attribute;
  ExprPtr value;
  std::string attr;
  AttributeExpr() : Expr(K) {}
};

struct SubscriptExpr : Expr {
  static constexpr NodeKind K = NodeKind::Subscript;
  ExprPtr value;
  ExprPtr slice;
  SubscriptExpr() : Expr(K) {}
};

struct Keyword {
  std::string name;  // empty for ** unpacking
  ExprPtr value;
};

struct CallExpr : Expr {
  static constexpr NodeKind K = NodeKind::Call;
  ExprPtr func;
  std::vector<ExprPtr> args;
  std::vector<Keyword> keywords;
  CallExpr() : Expr(K) {}
};

enum class ConstKind : uint8_t { None_, True_, False_, Int, Float, Complex, Str, Bytes, Ellipsis_ };

struct ConstantExpr : Expr {
  static constexpr NodeKind K = NodeKind::Constant;
  ConstKind ckind = ConstKind::None_;
  std::string text;  // raw literal text
  ConstantExpr() : Expr(K) {}
  bool is_string() const { return ckind == ConstKind::Str; }
};

/// Formatted string: literal chunks (ConstantExpr) interleaved with
/// replacement-field expressions.
struct FStringExpr : Expr {
  static constexpr NodeKind K = NodeKind::FString;
  std::vector<ExprPtr> parts;
  FStringExpr() : Expr(K) {}
};

struct TupleExpr : Expr {
  static constexpr NodeKind K = NodeKind::TupleExpr;
  std::vector<ExprPtr> elts;
  TupleExpr() : Expr(K) {}
};

struct ListExpr : Expr {
  static constexpr NodeKind K = NodeKind::ListExpr;
  std::vector<ExprPtr> elts;
  ListExpr() : Expr(K) {}
};

struct SetExpr : Expr {
  static constexpr NodeKind K = NodeKind::SetExpr;
  std::vector<ExprPtr> elts;
  SetExpr() : Expr(K) {}
};

struct DictExpr : Expr {
  static constexpr NodeKind K = NodeKind::DictExpr;
  std::vector<ExprPtr> keys;  // null entry = ** unpacking
  std::vector<ExprPtr> values;
  DictExpr() : Expr(K) {}
};

struct StarredExpr : Expr {
  static constexpr NodeKind K = NodeKind::Starred;
  ExprPtr value;
  bool double_star = false;  // ** in match mapping patterns
  StarredExpr() : Expr(K) {}
};

enum class BinaryOp : uint8_t {
  Add, Sub, Mult, MatMult, Div, FloorDiv, Mod, Pow, LShift, RShift,
  BitOr, BitXor, BitAnd,
};

struct BinOpExpr : Expr {
  static constexpr NodeKind K = NodeKind::BinOp;
  BinaryOp op = BinaryOp::Add;
  ExprPtr left, right;
  BinOpExpr() : Expr(K) {}
};

enum class UnaryOpKind : uint8_t { Plus, Minus, Invert, Not };

struct UnaryOpExpr : Expr {
  static constexpr NodeKind K = NodeKind::UnaryOp;
  UnaryOpKind op = UnaryOpKind::Plus;
  ExprPtr operand;
  UnaryOpExpr() : Expr(K) {}
};

struct BoolOpExpr : Expr {
  static constexpr NodeKind K = NodeKind::BoolOp;
  bool is_and = false;
  std::vector<ExprPtr> values;
  BoolOpExpr() : Expr(K) {}
};

enum class CmpOp : uint8_t { Lt, Gt, LtE, GtE, Eq, NotEq, Is, IsNot, In, NotIn };

struct CompareExpr : Expr {
  static constexpr NodeKind K = NodeKind::Compare;
  ExprPtr left;
  std::vector<CmpOp> ops;
  std::vector<ExprPtr> comparators;
  CompareExpr() : Expr(K) {}
};

enum class ParamKind : uint8_t { PositionalOnly, PositionalOrKeyword, VarArg, KeywordOnly, KwArg };

struct Param {
  std::string name;
  ExprPtr annotation;
  ExprPtr default_value;
  ParamKind kind = ParamKind::PositionalOrKeyword;
};

struct LambdaExpr : Expr {
  static constexpr NodeKind K = NodeKind::Lambda;
  std::vector<Param> params;
  ExprPtr body;
  LambdaExpr() : Expr(K) {}
};

struct IfExpExpr : Expr {
  static constexpr NodeKind K = NodeKind::IfExp;
  ExprPtr body, test, orelse;
  IfExpExpr() : Expr(K) {}
};

struct Comprehension {
  ExprPtr target;
  ExprPtr iter;
  std::vector<ExprPtr> ifs;
  bool is_async = false;
};

struct ListCompExpr : Expr {
  static constexpr NodeKind K = NodeKind::ListComp;
  ExprPtr elt;
  std::vector<Comprehension> generators;
  ListCompExpr() : Expr(K) {}
};

struct SetCompExpr : Expr {
  static constexpr NodeKind K = NodeKind::SetComp;
  ExprPtr elt;
  std::vector<Comprehension> generators;
  SetCompExpr() : Expr(K) {}
};

struct DictCompExpr : Expr {
  static constexpr NodeKind K = NodeKind::DictComp;
  ExprPtr key, value;
  std::vector<Comprehension> generators;
  DictCompExpr() : Expr(K) {}
};

struct GeneratorExpExpr : Expr {
  static constexpr NodeKind K = NodeKind::GeneratorExp;
  ExprPtr elt;
  std::vector<Comprehension> generators;
  GeneratorExpExpr() : Expr(K) {}
};

struct AwaitExpr : Expr {
  static constexpr NodeKind K = NodeKind::Await;
  ExprPtr value;
  AwaitExpr() : Expr(K) {}
};

struct YieldExpr : Expr {
  static constexpr NodeKind K = NodeKind::Yield;
  ExprPtr value;  // may be null
  YieldExpr() : Expr(K) {}
};

struct YieldFromExpr : Expr {
  static constexpr NodeKind K = NodeKind::YieldFrom;
  ExprPtr value;
  YieldFromExpr() : Expr(K) {}
};

struct NamedExprExpr : Expr {
  static constexpr NodeKind K = NodeKind::NamedExpr;
  ExprPtr target;  // always a NameExpr
  ExprPtr value;
  NamedExprExpr() : Expr(K) {}
};

struct SliceExpr : Expr {
  static constexpr NodeKind K = NodeKind::Slice;
  ExprPtr lower, upper, step;  // each may be null
  SliceExpr() : Expr(K) {}
};

// ----------------------------------------------------------------- statements

struct ExprStmtNode : Stmt {
  static constexpr NodeKind K = NodeKind::ExprStmt;
  ExprPtr value;
  ExprStmtNode() : Stmt(K) {}
};

struct AssignStmt : Stmt {
  static constexpr NodeKind K = NodeKind::Assign;
  std::vector<ExprPtr> targets;
  ExprPtr value;
  AssignStmt() : Stmt(K) {}
};

struct AugAssignStmt : Stmt {
  static constexpr NodeKind K = NodeKind::AugAssign;
  ExprPtr target;
  BinaryOp op = BinaryOp::Add;
  ExprPtr value;
  AugAssignStmt() : Stmt(K) {}
};

struct AnnAssignStmt : Stmt {
  static constexpr NodeKind K = NodeKind::AnnAssign;
  ExprPtr target;
  ExprPtr annotation;
  ExprPtr value;  // may be null
  AnnAssignStmt() : Stmt(K) {}
};

struct ReturnStmt : Stmt {
  static constexpr NodeKind K = NodeKind::Return;
  ExprPtr value;  // may be null
  ReturnStmt() : Stmt(K) {}
};

struct PassStmt : Stmt {
  static constexpr NodeKind K = NodeKind::Pass;
  PassStmt() : Stmt(K) {}
};
struct BreakStmt : Stmt {
  static constexpr NodeKind K = NodeKind::Break;
  BreakStmt() : Stmt(K) {}
};
struct ContinueStmt : Stmt {
  static constexpr NodeKind K = NodeKind::Continue;
  ContinueStmt() : Stmt(K) {}
};

struct RaiseStmt : Stmt {
  static constexpr NodeKind K = NodeKind::Raise;
  ExprPtr exc, cause;  // both optional
  RaiseStmt() : Stmt(K) {}
};

struct AssertStmt : Stmt {
  static constexpr NodeKind K = NodeKind::Assert;
  ExprPtr test, msg;  // msg optional
  AssertStmt() : Stmt(K) {}
};

struct DeleteStmt : Stmt {
  static constexpr NodeKind K = NodeKind::Delete;
  std::vector<ExprPtr> targets;
  DeleteStmt() : Stmt(K) {}
};

struct Alias {
  std::string name;    // dotted for plain imports
  std::string asname;  // empty when absent
};

struct ImportStmt : Stmt {
  static constexpr NodeKind K = NodeKind::Import;
  std::vector<Alias> names;
  ImportStmt() : Stmt(K) {}
};

struct ImportFromStmt : Stmt {
  static constexpr NodeKind K = NodeKind::ImportFrom;
  std::string module;  // may be empty (pure relative import)
  int level = 0;       // number of leading dots
  std::vector<Alias> names;
  bool is_star = false;
  ImportFromStmt() : Stmt(K) {}
};

struct GlobalStmt : Stmt {
  static constexpr NodeKind K = NodeKind::Global;
  std::vector<std::string> names;
  GlobalStmt() : Stmt(K) {}
};

struct NonlocalStmt : Stmt {
  static constexpr NodeKind K = NodeKind::Nonlocal;
  std::vector<std::string> names;
  NonlocalStmt() : Stmt(K) {}
};

struct IfStmt : Stmt {
  static constexpr NodeKind K = NodeKind::If;
  ExprPtr test;
  std::vector<StmtPtr> body, orelse;
  IfStmt() : Stmt(K) {}
};

struct WhileStmt : Stmt {
  static constexpr NodeKind K = NodeKind::While;
  ExprPtr test;
  std::vector<StmtPtr> body, orelse;
  WhileStmt() : Stmt(K) {}
};

struct ForStmt : Stmt {
  static constexpr NodeKind K = NodeKind::For;
  ExprPtr target, iter;
  std::vector<StmtPtr> body, orelse;
  bool is_async = false;
  ForStmt() : Stmt(K) {}
};

struct WithItem {
  ExprPtr ctx;
  ExprPtr vars;  // optional `as` target
};

struct WithStmt : Stmt {
  static constexpr NodeKind K = NodeKind::With;
  std::vector<WithItem> items;
  std::vector<StmtPtr> body;
  bool is_async = false;
  WithStmt() : Stmt(K) {}
};

struct ExceptHandler {
  ExprPtr type;      // optional
  std::string name;  // optional `as` name
  std::vector<StmtPtr> body;
};

struct TryStmt : Stmt {
  static constexpr NodeKind K = NodeKind::Try;
  std::vector<StmtPtr> body;
  std::vector<ExceptHandler> handlers;
  std::vector<StmtPtr> orelse, finalbody;
  bool is_star = false;  // `except*`
  TryStmt() : Stmt(K) {}
};

struct FunctionDefStmt : Stmt {
  static constexpr NodeKind K = NodeKind::FunctionDef;
  std::string name;
  std::vector<Param> params;
  std::vector<StmtPtr> body;
  std::vector<ExprPtr> decorators;
  ExprPtr returns;  // optional
  bool is_async = false;
  FunctionDefStmt() : Stmt(K) {}
};

struct ClassDefStmt : Stmt {
  static constexpr NodeKind K = NodeKind::ClassDef;
  std::string name;
  std::vector<ExprPtr> bases;
  std::vector<Keyword> keywords;
  std::vector<StmtPtr> body;
  std::vector<ExprPtr> decorators;
  ClassDefStmt() : Stmt(K) {}
};

struct MatchCase {
  ExprPtr pattern;  // patterns reuse expression nodes
  ExprPtr guard;    // optional
  std::vector<std::string> bound_names;  // capture / as / star bindings
  std::vector<StmtPtr> body;
};

struct MatchStmt : Stmt {
  static constexpr NodeKind K = NodeKind::Match;
  ExprPtr subject;
  std::vector<MatchCase> cases;
  MatchStmt() : Stmt(K) {}
};

struct Module {
  std::vector<StmtPtr> body;
};

/// First statement of a block when it is a plain string literal.
const ConstantExpr* docstring_of(const std::vector<StmtPtr>& body);

/// Best-effort compact source text for display (names, attributes,
/// subscripts, calls). Falls back to a placeholder for other shapes.
std::string expr_to_text(const Expr* e);

}  // namespace dscan::frontend::ast

#endif  // DSCAN_FRONTEND_AST_HPP
