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

#include "dscan/model/builder.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace dscan::model {

namespace A = frontend::ast;

namespace {

Visibility visibility_of(const std::string& name) {
  return (!name.empty() && name[0] == '_') ? Visibility::Private : Visibility::Public;
}

// Name/Attribute/Subscript atoms of an assignment target (unpacks
// tuples/lists/starred).
void for_each_target_atom(const A::Expr* target, const std::function<void(const A::Expr*)>& fn) {
  if (!target) return;
  switch (target->kind) {
    case A::NodeKind::TupleExpr:
      for (const auto& e : static_cast<const A::TupleExpr*>(target)->elts)
        for_each_target_atom(e.get(), fn);
      return;
    case A::NodeKind::ListExpr:
      for (const auto& e : static_cast<const A::ListExpr*>(target)->elts)
        for_each_target_atom(e.get(), fn);
      return;
    case A::NodeKind::Starred:
      for_each_target_atom(static_cast<const A::StarredExpr*>(target)->value.get(), fn);
      return;
    default:
      fn(target);
  }
}

// Assignment-target expressions introduced by one statement.
void for_each_assign_target(const A::Stmt* s, const std::function<void(const A::Expr*)>& fn) {
  switch (s->kind) {
    case A::NodeKind::Assign:
      for (const auto& t : static_cast<const A::AssignStmt*>(s)->targets)
        for_each_target_atom(t.get(), fn);
      return;
    case A::NodeKind::AugAssign:
      for_each_target_atom(static_cast<const A::AugAssignStmt*>(s)->target.get(), fn);
      return;
    case A::NodeKind::AnnAssign:
      for_each_target_atom(static_cast<const A::AnnAssignStmt*>(s)->target.get(), fn);
      return;
    case A::NodeKind::For:
      for_each_target_atom(static_cast<const A::ForStmt*>(s)->target.get(), fn);
      return;
    case A::NodeKind::With:
      for (const auto& item : static_cast<const A::WithStmt*>(s)->items)
        if (item.vars) for_each_target_atom(item.vars.get(), fn);
      return;
    default:
      return;
  }
}

// Child statement blocks of a compound statement (not def/class bodies).
void for_each_child_block(const A::Stmt* s,
                          const std::function<void(const std::vector<A::StmtPtr>&)>& fn) {
  switch (s->kind) {
    case A::NodeKind::If: {
      const auto* n = static_cast<const A::IfStmt*>(s);
      fn(n->body);
      fn(n->orelse);
      return;
    }
    case A::NodeKind::While: {
      const auto* n = static_cast<const A::WhileStmt*>(s);
      fn(n->body);
      fn(n->orelse);
      return;
    }
    case A::NodeKind::For: {
      const auto* n = static_cast<const A::ForStmt*>(s);
      fn(n->body);
      fn(n->orelse);
      return;
    }
    case A::NodeKind::With:
      fn(static_cast<const A::WithStmt*>(s)->body);
      return;
    case A::NodeKind::Try: {
      const auto* n = static_cast<const A::TryStmt*>(s);
      fn(n->body);
      for (const auto& h : n->handlers) fn(h.body);
      fn(n->orelse);
      fn(n->finalbody);
      return;
    }
    case A::NodeKind::Match:
      for (const auto& c : static_cast<const A::MatchStmt*>(s)->cases) fn(c.body);
      return;
    default:
      return;
  }
}

// Expressions directly held by one statement (no recursion into child
// statements or into def/class bodies).
void for_each_stmt_expr(const A::Stmt* s, const std::function<void(const A::Expr*)>& fn) {
  auto opt = [&](const A::ExprPtr& e) {
    if (e) fn(e.get());
  };
  switch (s->kind) {
    case A::NodeKind::ExprStmt: opt(static_cast<const A::ExprStmtNode*>(s)->value); return;
    case A::NodeKind::Assign: {
      const auto* n = static_cast<const A::AssignStmt*>(s);
      for (const auto& t : n->targets) fn(t.get());
      opt(n->value);
      return;
    }
    case A::NodeKind::AugAssign: {
      const auto* n = static_cast<const A::AugAssignStmt*>(s);
      fn(n->target.get());
      opt(n->value);
      return;
    }
    case A::NodeKind::AnnAssign: {
      const auto* n = static_cast<const A::AnnAssignStmt*>(s);
      fn(n->target.get());
      opt(n->annotation);
      opt(n->value);
      return;
    }
    case A::NodeKind::Return: opt(static_cast<const A::ReturnStmt*>(s)->value); return;
    case A::NodeKind::Raise: {
      const auto* n = static_cast<const A::RaiseStmt*>(s);
      opt(n->exc);
      opt(n->cause);
      return;
    }
    case A::NodeKind::Assert: {
      const auto* n = static_cast<const A::AssertStmt*>(s);
      opt(n->test);
      opt(n->msg);
      return;
    }
    case A::NodeKind::Delete:
      for (const auto& t : static_cast<const A::DeleteStmt*>(s)->targets) fn(t.get());
      return;
    case A::NodeKind::If: opt(static_cast<const A::IfStmt*>(s)->test); return;
    case A::NodeKind::While: opt(static_cast<const A::WhileStmt*>(s)->test); return;
    case A::NodeKind::For: {
      const auto* n = static_cast<const A::ForStmt*>(s);
      fn(n->target.get());
      fn(n->iter.get());
      return;
    }
    case A::NodeKind::With:
      for (const auto& item : static_cast<const A::WithStmt*>(s)->items) {
        fn(item.ctx.get());
        if (item.vars) fn(item.vars.get());
      }
      return;
    case A::NodeKind::Try:
      for (const auto& h : static_cast<const A::TryStmt*>(s)->handlers)
        if (h.type) fn(h.type.get());
      return;
    case A::NodeKind::Match: {
      const auto* n = static_cast<const A::MatchStmt*>(s);
      fn(n->subject.get());
      for (const auto& c : n->cases)
        if (c.guard) fn(c.guard.get());
      // Patterns are visited separately (their bare names bind, not load).
      return;
    }
    default:
      return;
  }
}

// All subexpressions, depth first, including the node itself.
void walk_expr(const A::Expr* e, const std::function<bool(const A::Expr*)>& fn) {
  if (!e) return;
  if (!fn(e)) return;  // callback may claim the subtree
  auto rec = [&](const A::ExprPtr& p) { walk_expr(p.get(), fn); };
  switch (e->kind) {
    case A::NodeKind::Attribute: rec(static_cast<const A::AttributeExpr*>(e)->value); return;
    case A::NodeKind::Subscript: {
      const auto* n = static_cast<const A::SubscriptExpr*>(e);
      rec(n->value);
      rec(n->slice);
      return;
    }
    case A::NodeKind::Call: {
      const auto* n = static_cast<const A::CallExpr*>(e);
      rec(n->func);
      for (const auto& a : n->args) rec(a);
      for (const auto& k : n->keywords) rec(k.value);
      return;
    }
    case A::NodeKind::FString:
      for (const auto& p : static_cast<const A::FStringExpr*>(e)->parts) rec(p);
      return;
    case A::NodeKind::TupleExpr:
      for (const auto& p : static_cast<const A::TupleExpr*>(e)->elts) rec(p);
      return;
    case A::NodeKind::ListExpr:
      for (const auto& p : static_cast<const A::ListExpr*>(e)->elts) rec(p);
      return;
    case A::NodeKind::SetExpr:
      for (const auto& p : static_cast<const A::SetExpr*>(e)->elts) rec(p);
      return;
    case A::NodeKind::DictExpr: {
      const auto* n = static_cast<const A::DictExpr*>(e);
      for (const auto& k : n->keys) rec(k);
      for (const auto& v : n->values) rec(v);
      return;
    }
    case A::NodeKind::Starred: rec(static_cast<const A::StarredExpr*>(e)->value); return;
    case A::NodeKind::BinOp: {
      const auto* n = static_cast<const A::BinOpExpr*>(e);
      rec(n->left);
      rec(n->right);
      return;
    }
    case A::NodeKind::UnaryOp: rec(static_cast<const A::UnaryOpExpr*>(e)->operand); return;
    case A::NodeKind::BoolOp:
      for (const auto& v : static_cast<const A::BoolOpExpr*>(e)->values) rec(v);
      return;
    case A::NodeKind::Compare: {
      const auto* n = static_cast<const A::CompareExpr*>(e);
      rec(n->left);
      for (const auto& c : n->comparators) rec(c);
      return;
    }
    case A::NodeKind::Lambda: {
      const auto* n = static_cast<const A::LambdaExpr*>(e);
      for (const auto& p : n->params) {
        if (p.annotation) rec(p.annotation);
        if (p.default_value) rec(p.default_value);
      }
      rec(n->body);
      return;
    }
    case A::NodeKind::IfExp: {
      const auto* n = static_cast<const A::IfExpExpr*>(e);
      rec(n->body);
      rec(n->test);
      rec(n->orelse);
      return;
    }
    case A::NodeKind::ListComp: {
      const auto* n = static_cast<const A::ListCompExpr*>(e);
      rec(n->elt);
      for (const auto& g : n->generators) {
        rec(g.target);
        rec(g.iter);
        for (const auto& i : g.ifs) rec(i);
      }
      return;
    }
    case A::NodeKind::SetComp: {
      const auto* n = static_cast<const A::SetCompExpr*>(e);
      rec(n->elt);
      for (const auto& g : n->generators) {
        rec(g.target);
        rec(g.iter);
        for (const auto& i : g.ifs) rec(i);
      }
      return;
    }
    case A::NodeKind::DictComp: {
      const auto* n = static_cast<const A::DictCompExpr*>(e);
      rec(n->key);
      rec(n->value);
      for (const auto& g : n->generators) {
        rec(g.target);
        rec(g.iter);
        for (const auto& i : g.ifs) rec(i);
      }
      return;
    }
    case A::NodeKind::GeneratorExp: {
      const auto* n = static_cast<const A::GeneratorExpExpr*>(e);
      rec(n->elt);
      for (const auto& g : n->generators) {
        rec(g.target);
        rec(g.iter);
        for (const auto& i : g.ifs) rec(i);
      }
      return;
    }
    case A::NodeKind::Await: rec(static_cast<const A::AwaitExpr*>(e)->value); return;
    case A::NodeKind::Yield: rec(static_cast<const A::YieldExpr*>(e)->value); return;
    case A::NodeKind::YieldFrom: rec(static_cast<const A::YieldFromExpr*>(e)->value); return;
    case A::NodeKind::NamedExpr: {
      const auto* n = static_cast<const A::NamedExprExpr*>(e);
      rec(n->target);
      rec(n->value);
      return;
    }
    case A::NodeKind::Slice: {
      const auto* n = static_cast<const A::SliceExpr*>(e);
      rec(n->lower);
      rec(n->upper);
      rec(n->step);
      return;
    }
    default:
      return;
  }
}

std::string dotted_of(const std::string& rel_path) {
  std::string p = rel_path;
  if (p.size() > 3 && p.compare(p.size() - 3, 3, ".py") == 0) p.resize(p.size() - 3);
  const std::string init = "__init__";
  if (p == init) return "";
  if (p.size() > init.size() + 1 &&
      p.compare(p.size() - init.size() - 1, init.size() + 1, "/" + init) == 0)
    p.resize(p.size() - init.size() - 1);
  std::replace(p.begin(), p.end(), '/', '.');
  return p;
}

// ------------------------------------------------------------------- pass one

class SkeletonBuilder {
 public:
  SkeletonBuilder(Project& proj, ModuleEntity& mod) : proj_(proj), mod_(mod) {}

  void run() {
    const auto& body = mod_.parsed->tree->body;
    collect_module_variables(body);
    walk(body, nullptr, nullptr, "");
  }

 private:
  Project& proj_;
  ModuleEntity& mod_;

  void collect_module_variables(const std::vector<A::StmtPtr>& body) {
    for (const auto& s : body) {
      for_each_assign_target(s.get(), [&](const A::Expr* atom) {
        if (const auto* n = A::as<A::NameExpr>(atom)) {
          auto it = mod_.variables.find(n->id);
          if (it == mod_.variables.end()) mod_.variables.emplace(n->id, atom->line);
        }
      });
      // Module-level bindings reach through plain control flow.
      for_each_child_block(s.get(), [&](const std::vector<A::StmtPtr>& block) {
        collect_module_variables(block);
      });
    }
  }

  void walk(const std::vector<A::StmtPtr>& body, ClassEntity* cls, SubroutineEntity* sub,
            const std::string& qual_prefix) {
    for (const auto& s : body) {
      if (const auto* cd = A::as<A::ClassDefStmt>(s.get())) {
        handle_class(*cd, cls, sub, qual_prefix);
      } else if (const auto* fd = A::as<A::FunctionDefStmt>(s.get())) {
        handle_def(*fd, cls, sub, qual_prefix, /*direct_in_class=*/cls != nullptr && sub == nullptr);
      } else {
        for_each_child_block(s.get(), [&](const std::vector<A::StmtPtr>& block) {
          walk(block, cls, sub, qual_prefix);
        });
      }
    }
  }

  void handle_class(const A::ClassDefStmt& cd, ClassEntity* parent_cls, SubroutineEntity* sub,
                    const std::string& qual_prefix) {
    proj_.classes.emplace_back();
    ClassEntity& c = proj_.classes.back();
    c.name = cd.name;
    c.qualname = qual_prefix.empty() ? cd.name : qual_prefix + "::" + cd.name;
    c.module = &mod_;
    c.parent_class = (sub == nullptr) ? parent_cls : effective_class(parent_cls, sub);
    c.enclosing_sub = sub;
    c.span_first = cd.line;
    c.span_last = cd.end_line;
    c.def = &cd;
    for (const auto& b : cd.bases) c.base_texts.push_back(A::expr_to_text(b.get()));
    for (const auto& d : cd.decorators) c.decorators.push_back(A::expr_to_text(d.get()));
    mod_.classes.push_back(&c);

    // Class-body-level assignment targets become fields.
    for (const auto& st : cd.body) {
      for_each_assign_target(st.get(), [&](const A::Expr* atom) {
        if (const auto* n = A::as<A::NameExpr>(atom)) add_field(c, n->id, atom->line);
      });
    }

    walk(cd.body, &c, nullptr, c.qualname);

    // self.<name> assignment targets anywhere in the class's own methods.
    for (auto* m : c.methods) {
      if (m->params.empty() || m->has_decorator("staticmethod")) continue;
      const std::string& recv = m->params[0].name;
      collect_receiver_fields(m->def->body, recv, c);
    }
  }

  static ClassEntity* effective_class(ClassEntity* cls, SubroutineEntity* sub) {
    // A class defined inside a function hangs off the nearest class/module.
    if (sub) {
      if (sub->parent_class) return sub->parent_class;
      return nullptr;
    }
    return cls;
  }

  void collect_receiver_fields(const std::vector<A::StmtPtr>& body, const std::string& recv,
                               ClassEntity& c) {
    for (const auto& s : body) {
      for_each_assign_target(s.get(), [&](const A::Expr* atom) {
        if (const auto* at = A::as<A::AttributeExpr>(atom)) {
          if (const auto* base = A::as<A::NameExpr>(at->value.get())) {
            if (base->id == recv) add_field(c, at->attr, atom->line);
          }
        }
      });
      for_each_child_block(s.get(), [&](const std::vector<A::StmtPtr>& block) {
        collect_receiver_fields(block, recv, c);
      });
      // Nested defs count as part of the method for field discovery.
      if (const auto* fd = A::as<A::FunctionDefStmt>(s.get()))
        collect_receiver_fields(fd->body, recv, c);
    }
  }

  void add_field(ClassEntity& c, const std::string& name, int line) {
    for (const auto& f : c.fields)
      if (f.name == name) return;
    c.fields.push_back(FieldRecord{name, visibility_of(name), line});
  }

  void handle_def(const A::FunctionDefStmt& fd, ClassEntity* cls, SubroutineEntity* sub,
                  const std::string& qual_prefix, bool direct_in_class) {
    proj_.subroutines.emplace_back();
    SubroutineEntity& f = proj_.subroutines.back();
    f.name = fd.name;
    f.qualname = qual_prefix.empty() ? fd.name : qual_prefix + "::" + fd.name;
    f.module = &mod_;
    f.parent_class = cls;
    f.enclosing_sub = sub;
    f.is_method = direct_in_class;
    f.is_async = fd.is_async;
    f.span_first = fd.line;
    f.span_last = fd.end_line;
    f.def = &fd;
    for (const auto& p : fd.params)
      f.params.push_back(ParamInfo{p.name, p.kind, p.annotation.get()});
    for (const auto& d : fd.decorators) f.decorators.push_back(A::expr_to_text(d.get()));
    f.is_concrete = compute_concrete(fd, f);
    mod_.subroutines.push_back(&f);
    if (direct_in_class) cls->methods.push_back(&f);

    walk(fd.body, cls, &f, f.qualname);
  }

  static bool compute_concrete(const A::FunctionDefStmt& fd, const SubroutineEntity& f) {
    if (f.has_decorator("abstractmethod")) return false;
    bool first = true;
    bool only_stub = true;
    for (const auto& s : fd.body) {
      if (s->kind == A::NodeKind::Pass) {
        first = false;
        continue;
      }
      if (const auto* es = A::as<A::ExprStmtNode>(s.get())) {
        if (const auto* c = A::as<A::ConstantExpr>(es->value.get())) {
          bool docstring = first && c->ckind == A::ConstKind::Str;
          bool ellipsis = c->ckind == A::ConstKind::Ellipsis_;
          if (docstring || ellipsis) {
            first = false;
            continue;
          }
        }
      }
      only_stub = false;
      break;
    }
    return !only_stub;
  }
};

// ------------------------------------------------------------------- pass two

struct LocalCtx {
  const SubroutineEntity* sub = nullptr;
  std::string receiver;
  std::set<std::string> params;
  std::set<std::string> locals;
  std::set<std::string> globals_declared;
  std::set<std::string> nonlocals_declared;
  std::map<std::string, ClassEntity*> typed_locals;  // nullptr = poisoned
  std::map<std::string, Denotation> local_imports;
  const LocalCtx* enclosing = nullptr;
};

class Linker {
 public:
  explicit Linker(Project& proj) : proj_(proj) {}

  void run() {
    reset();
    for (auto& m : proj_.modules) build_module_scope(m);
    for (auto& c : proj_.classes) build_class_scope(c);
    for (auto& c : proj_.classes) resolve_bases(c);
    break_inheritance_cycles();
    for (auto& s : proj_.subroutines) link_subroutine(s);
    for (auto& c : proj_.classes) link_class_body(c);
    for (auto& c : proj_.classes) compute_uses_global(c);
    proj_.linked = true;
  }

 private:
  Project& proj_;

  void reset() {
    for (auto& m : proj_.modules) {
      m.imports.clear();
      m.scope = Scope{};
    }
    for (auto& c : proj_.classes) {
      c.resolved_bases.clear();
      c.referenced_classes.clear();
      c.uses_global = false;
      c.scope = Scope{};
    }
    for (auto& s : proj_.subroutines) {
      s.has_global_stmt = false;
      s.referenced_variables.clear();
      s.own_field_names.clear();
      s.foreign_fields.clear();
    }
  }

  ModuleEntity* module_by_dotted(const std::string& dotted) {
    if (dotted.empty()) return nullptr;
    auto it = proj_.by_dotted.find(dotted);
    return it == proj_.by_dotted.end() ? nullptr : it->second;
  }

  static std::string join_dotted(const std::string& a, const std::string& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    return a + "." + b;
  }

  // Skeleton-level member lookup: classes, subroutines and assigned
  // variables defined at the top level of a module (not its imports).
  Denotation module_member(ModuleEntity& m, const std::string& name) {
    Denotation d;
    if (ModuleEntity* sub = module_by_dotted(join_dotted(m.dotted, name))) {
      d.kind = Denotation::Kind::Module;
      d.mod = sub;
      return d;
    }
    for (auto* c : m.classes) {
      if (c->name == name && c->parent_class == nullptr && c->enclosing_sub == nullptr) {
        d.kind = Denotation::Kind::Class;
        d.cls = c;
        return d;
      }
    }
    for (auto* s : m.subroutines) {
      if (s->name == name && s->parent_class == nullptr && s->enclosing_sub == nullptr) {
        d.kind = Denotation::Kind::Subroutine;
        d.sub = s;
        return d;
      }
    }
    if (m.variables.count(name)) {
      d.kind = Denotation::Kind::ModuleVar;
      d.mod = &m;
      d.var_name = name;
      return d;
    }
    d.kind = Denotation::Kind::External;
    return d;
  }

  static std::string package_of(const ModuleEntity& m) {
    bool is_init = m.rel_path == "__init__.py" ||
                   (m.rel_path.size() > 12 &&
                    m.rel_path.compare(m.rel_path.size() - 12, 12, "/__init__.py") == 0);
    if (is_init) return m.dotted;
    auto dot = m.dotted.rfind('.');
    return dot == std::string::npos ? "" : m.dotted.substr(0, dot);
  }

  std::string resolve_relative_base(const ModuleEntity& m, int level, const std::string& mod) {
    std::string pkg = package_of(m);
    for (int i = 1; i < level; ++i) {
      auto dot = pkg.rfind('.');
      pkg = dot == std::string::npos ? "" : pkg.substr(0, dot);
    }
    return join_dotted(pkg, mod);
  }

  Denotation external() {
    Denotation d;
    d.kind = Denotation::Kind::External;
    return d;
  }

  // Collects import statements reachable at module level (including inside
  // try/if blocks) and resolves them against the skeleton.
  void collect_imports(ModuleEntity& m, const std::vector<A::StmtPtr>& body,
                       std::vector<std::tuple<int, std::string, Denotation>>& binds) {
    for (const auto& st : body) {
      if (const auto* imp = A::as<A::ImportStmt>(st.get())) {
        for (const auto& alias : imp->names) {
          ImportLink link;
          link.line = st->line;
          link.text = "import " + alias.name + (alias.asname.empty() ? "" : " as " + alias.asname);
          ModuleEntity* target = module_by_dotted(alias.name);
          Denotation d = external();
          if (target) {
            d.kind = Denotation::Kind::Module;
            d.mod = target;
          }
          d.via_import = true;
          link.target = d;
          if (!alias.asname.empty()) {
            link.binding = alias.asname;
            binds.emplace_back(st->line, alias.asname, d);
          } else {
            auto dot = alias.name.find('.');
            std::string top = dot == std::string::npos ? alias.name : alias.name.substr(0, dot);
            Denotation topd = external();
            if (ModuleEntity* tm = module_by_dotted(top)) {
              topd.kind = Denotation::Kind::Module;
              topd.mod = tm;
            }
            topd.via_import = true;
            link.binding = top;
            binds.emplace_back(st->line, top, topd);
          }
          m.imports.push_back(std::move(link));
        }
      } else if (const auto* imp_from = A::as<A::ImportFromStmt>(st.get())) {
        std::string container = imp_from->level == 0
                                    ? imp_from->module
                                    : resolve_relative_base(m, imp_from->level, imp_from->module);
        std::string dots(static_cast<size_t>(imp_from->level), '.');
        if (imp_from->is_star) {
          ImportLink link;
          link.line = st->line;
          link.text = "from " + dots + imp_from->module + " import *";
          link.binding = "*";
          Denotation d = external();
          if (ModuleEntity* cm = module_by_dotted(container)) {
            d.kind = Denotation::Kind::Module;
            d.mod = cm;
          }
          d.via_import = true;
          link.target = d;
          // Star imports resolve to the module; no member bindings are added.
          m.imports.push_back(std::move(link));
          continue;
        }
        for (const auto& alias : imp_from->names) {
          ImportLink link;
          link.line = st->line;
          link.text = "from " + dots + imp_from->module + " import " + alias.name +
                      (alias.asname.empty() ? "" : " as " + alias.asname);
          Denotation d = external();
          if (ModuleEntity* target_mod = module_by_dotted(join_dotted(container, alias.name))) {
            d.kind = Denotation::Kind::Module;
            d.mod = target_mod;
          } else if (ModuleEntity* cm = module_by_dotted(container)) {
            d = module_member(*cm, alias.name);
          }
          d.via_import = true;
          link.target = d;
          std::string bound = alias.asname.empty() ? alias.name : alias.asname;
          link.binding = bound;
          binds.emplace_back(st->line, bound, d);
          m.imports.push_back(std::move(link));
        }
      } else if (st->kind != A::NodeKind::FunctionDef && st->kind != A::NodeKind::ClassDef) {
        for_each_child_block(st.get(), [&](const std::vector<A::StmtPtr>& block) {
          collect_imports(m, block, binds);
        });
      }
    }
  }

  void build_module_scope(ModuleEntity& m) {
    std::vector<std::tuple<int, std::string, Denotation>> binds;
    for (auto* c : m.classes) {
      if (c->parent_class || c->enclosing_sub) continue;
      Denotation d;
      d.kind = Denotation::Kind::Class;
      d.cls = c;
      binds.emplace_back(c->span_first, c->name, d);
    }
    for (auto* s : m.subroutines) {
      if (s->parent_class || s->enclosing_sub) continue;
      Denotation d;
      d.kind = Denotation::Kind::Subroutine;
      d.sub = s;
      binds.emplace_back(s->span_first, s->name, d);
    }
    for (const auto& [name, line] : m.variables) {
      Denotation d;
      d.kind = Denotation::Kind::ModuleVar;
      d.mod = &m;
      d.var_name = name;
      binds.emplace_back(line, name, d);
    }
    collect_imports(m, m.parsed->tree->body, binds);
    std::stable_sort(binds.begin(), binds.end(), [](const auto& a, const auto& b) {
      return std::get<0>(a) < std::get<0>(b);
    });
    for (auto& [line, name, d] : binds) m.scope.bindings[name] = d;  // later wins
  }

  void build_class_scope(ClassEntity& c) {
    c.scope.is_class_scope = true;
    c.scope.parent = c.parent_class ? &c.parent_class->scope : &c.module->scope;
    for (auto& nested : proj_.classes) {
      if (nested.parent_class == &c && nested.enclosing_sub == nullptr) {
        Denotation d;
        d.kind = Denotation::Kind::Class;
        d.cls = &nested;
        c.scope.bindings[nested.name] = d;
      }
    }
    for (auto* mth : c.methods) {
      Denotation d;
      d.kind = Denotation::Kind::Subroutine;
      d.sub = mth;
      c.scope.bindings[mth->name] = d;
    }
  }

  // Static denotation of an expression (type-like positions: bases,
  // annotations, constructor callees).
  Denotation denote_static(const A::Expr* e, const Scope* scope, const LocalCtx* ctx,
                           bool skip_class) {
    if (!e) return {};
    switch (e->kind) {
      case A::NodeKind::Name: {
        const auto& id = static_cast<const A::NameExpr*>(e)->id;
        if (ctx) {
          // Local names shadow module names; a shadowed name denotes nothing
          // statically unless tracked as a typed local or local import.
          for (const LocalCtx* c = ctx; c; c = c->enclosing) {
            auto imp = c->local_imports.find(id);
            if (imp != c->local_imports.end()) return imp->second;
            auto ty = c->typed_locals.find(id);
            if (ty != c->typed_locals.end()) {
              Denotation d;
              if (ty->second) {
                d.kind = Denotation::Kind::Class;
                d.cls = ty->second;
              }
              return d;
            }
            if (c->params.count(id) || c->locals.count(id)) return {};
          }
        }
        if (const Denotation* d = scope->lookup(id, skip_class)) return *d;
        return {};
      }
      case A::NodeKind::Attribute: {
        const auto* at = static_cast<const A::AttributeExpr*>(e);
        Denotation base = denote_static(at->value.get(), scope, ctx, skip_class);
        return member_of(base, at->attr);
      }
      case A::NodeKind::Subscript:
        return denote_static(static_cast<const A::SubscriptExpr*>(e)->value.get(), scope, ctx,
                             skip_class);
      default:
        return {};
    }
  }

  Denotation member_of(const Denotation& base, const std::string& attr) {
    if (base.kind == Denotation::Kind::Module && base.mod) {
      Denotation d = module_member(*base.mod, attr);
      d.via_import = base.via_import;
      return d;
    }
    if (base.kind == Denotation::Kind::Class && base.cls) {
      auto it = base.cls->scope.bindings.find(attr);
      if (it != base.cls->scope.bindings.end()) return it->second;
      return {};
    }
    return {};
  }

  void resolve_bases(ClassEntity& c) {
    const Scope* scope = c.parent_class ? &c.parent_class->scope : &c.module->scope;
    for (const auto& b : c.def->bases) {
      BaseLink link;
      link.text = A::expr_to_text(b.get());
      Denotation d = denote_static(b.get(), scope, nullptr, /*skip_class=*/false);
      if (d.kind == Denotation::Kind::Class && d.cls && d.cls != &c) link.target = d.cls;
      c.resolved_bases.push_back(std::move(link));
    }
  }

  void break_inheritance_cycles() {
    // Iterative DFS; a gray-target edge closes a cycle and is demoted.
    std::map<const ClassEntity*, int> color;  // 0 white, 1 gray, 2 black
    std::function<void(ClassEntity&)> visit = [&](ClassEntity& c) {
      color[&c] = 1;
      for (auto& b : c.resolved_bases) {
        if (!b.target) continue;
        int col = color[b.target];
        if (col == 1) {
          b.target = nullptr;  // cycle guard: demote to External
        } else if (col == 0) {
          visit(*b.target);
        }
      }
      color[&c] = 2;
    };
    for (auto& c : proj_.classes)
      if (color[&c] == 0) visit(c);
  }

  static ClassEntity* owner_class(const SubroutineEntity& s) {
    if (s.parent_class) return s.parent_class;
    for (const SubroutineEntity* up = s.enclosing_sub; up; up = up->enclosing_sub)
      if (up->parent_class) return up->parent_class;
    return nullptr;
  }

  // ---- per-subroutine binding collection

  void collect_bindings(LocalCtx& ctx, const std::vector<A::StmtPtr>& body,
                        SubroutineEntity& s) {
    for (const auto& st : body) {
      switch (st->kind) {
        case A::NodeKind::Global: {
          const auto* g = static_cast<const A::GlobalStmt*>(st.get());
          s.has_global_stmt = true;
          for (const auto& n : g->names) ctx.globals_declared.insert(n);
          break;
        }
        case A::NodeKind::Nonlocal: {
          const auto* g = static_cast<const A::NonlocalStmt*>(st.get());
          for (const auto& n : g->names) ctx.nonlocals_declared.insert(n);
          break;
        }
        case A::NodeKind::FunctionDef:
          ctx.locals.insert(static_cast<const A::FunctionDefStmt*>(st.get())->name);
          break;
        case A::NodeKind::ClassDef:
          ctx.locals.insert(static_cast<const A::ClassDefStmt*>(st.get())->name);
          break;
        case A::NodeKind::Import: {
          const auto* imp = static_cast<const A::ImportStmt*>(st.get());
          for (const auto& alias : imp->names) {
            std::string bound = alias.asname;
            Denotation d = external();
            if (ModuleEntity* tm = module_by_dotted(alias.name)) {
              d.kind = Denotation::Kind::Module;
              d.mod = tm;
            }
            d.via_import = true;
            if (bound.empty()) {
              auto dot = alias.name.find('.');
              bound = dot == std::string::npos ? alias.name : alias.name.substr(0, dot);
              if (ModuleEntity* tm = module_by_dotted(bound)) {
                d.mod = tm;
                d.kind = Denotation::Kind::Module;
              } else {
                d = external();
                d.via_import = true;
              }
            }
            ctx.locals.insert(bound);
            ctx.local_imports[bound] = d;
          }
          break;
        }
        case A::NodeKind::ImportFrom: {
          const auto* imp = static_cast<const A::ImportFromStmt*>(st.get());
          std::string container =
              imp->level == 0 ? imp->module
                              : resolve_relative_base(*s.module, imp->level, imp->module);
          if (imp->is_star) break;
          for (const auto& alias : imp->names) {
            std::string bound = alias.asname.empty() ? alias.name : alias.asname;
            Denotation d = external();
            if (ModuleEntity* tm = module_by_dotted(join_dotted(container, alias.name))) {
              d.kind = Denotation::Kind::Module;
              d.mod = tm;
            } else if (ModuleEntity* cm = module_by_dotted(container)) {
              d = module_member(*cm, alias.name);
            }
            d.via_import = true;
            ctx.locals.insert(bound);
            ctx.local_imports[bound] = d;
          }
          break;
        }
        case A::NodeKind::Match: {
          const auto* mt = static_cast<const A::MatchStmt*>(st.get());
          for (const auto& mc : mt->cases)
            for (const auto& n : mc.bound_names) ctx.locals.insert(n);
          break;
        }
        default:
          break;
      }
      if (const auto* te = A::as<A::TryStmt>(st.get())) {
        for (const auto& h : te->handlers)
          if (!h.name.empty()) ctx.locals.insert(h.name);
      }
      for_each_assign_target(st.get(), [&](const A::Expr* atom) {
        if (const auto* n = A::as<A::NameExpr>(atom)) ctx.locals.insert(n->id);
      });
      // Typed locals from constructor calls and annotations.
      collect_typed_locals(ctx, st.get(), s);
      // Walrus targets, lambda params and comprehension targets bind here.
      for_each_stmt_expr(st.get(), [&](const A::Expr* e) {
        walk_expr(e, [&](const A::Expr* sub) {
          if (const auto* ne = A::as<A::NamedExprExpr>(sub)) {
            if (const auto* n = A::as<A::NameExpr>(ne->target.get())) ctx.locals.insert(n->id);
          } else if (const auto* la = A::as<A::LambdaExpr>(sub)) {
            for (const auto& p : la->params) ctx.locals.insert(p.name);
          } else {
            collect_comp_targets(sub, ctx);
          }
          return true;
        });
      });
      if (st->kind != A::NodeKind::FunctionDef && st->kind != A::NodeKind::ClassDef) {
        for_each_child_block(st.get(), [&](const std::vector<A::StmtPtr>& block) {
          collect_bindings(ctx, block, s);
        });
      }
    }
  }

  void collect_comp_targets(const A::Expr* e, LocalCtx& ctx) {
    const std::vector<A::Comprehension>* gens = nullptr;
    if (const auto* n = A::as<A::ListCompExpr>(e)) gens = &n->generators;
    else if (const auto* n2 = A::as<A::SetCompExpr>(e)) gens = &n2->generators;
    else if (const auto* n3 = A::as<A::DictCompExpr>(e)) gens = &n3->generators;
    else if (const auto* n4 = A::as<A::GeneratorExpExpr>(e)) gens = &n4->generators;
    if (!gens) return;
    for (const auto& g : *gens) {
      for_each_target_atom(g.target.get(), [&](const A::Expr* atom) {
        if (const auto* n = A::as<A::NameExpr>(atom)) ctx.locals.insert(n->id);
      });
    }
  }

  void collect_typed_locals(LocalCtx& ctx, const A::Stmt* st, SubroutineEntity& s) {
    const Scope* scope = &s.module->scope;
    auto classify_value = [&](const A::Expr* value) -> ClassEntity* {
      if (const auto* call = A::as<A::CallExpr>(value)) {
        Denotation d = denote_static(call->func.get(), scope, nullptr, true);
        // Fall back to local imports for the callee.
        if (d.kind == Denotation::Kind::None) {
          if (const auto* nm = A::as<A::NameExpr>(call->func.get())) {
            auto it = ctx.local_imports.find(nm->id);
            if (it != ctx.local_imports.end()) d = it->second;
          }
        }
        if (d.kind == Denotation::Kind::Class) return d.cls;
      }
      return nullptr;
    };
    auto note_assign = [&](const std::string& name, ClassEntity* cls) {
      auto it = ctx.typed_locals.find(name);
      if (it == ctx.typed_locals.end()) {
        ctx.typed_locals.emplace(name, cls);
      } else if (it->second != cls) {
        it->second = nullptr;  // conflicting evidence
      }
    };
    if (const auto* as_ = A::as<A::AssignStmt>(st)) {
      if (as_->targets.size() == 1) {
        if (const auto* n = A::as<A::NameExpr>(as_->targets[0].get())) {
          note_assign(n->id, classify_value(as_->value.get()));
          return;
        }
      }
      for (const auto& t : as_->targets)
        for_each_target_atom(t.get(), [&](const A::Expr* atom) {
          if (const auto* n = A::as<A::NameExpr>(atom)) note_assign(n->id, nullptr);
        });
    } else if (const auto* an = A::as<A::AnnAssignStmt>(st)) {
      if (const auto* n = A::as<A::NameExpr>(an->target.get())) {
        Denotation d = denote_static(an->annotation.get(), scope, nullptr, true);
        ClassEntity* annotated = d.kind == Denotation::Kind::Class ? d.cls : nullptr;
        ClassEntity* constructed = an->value ? classify_value(an->value.get()) : nullptr;
        note_assign(n->id, annotated ? annotated : constructed);
      }
    } else if (st->kind == A::NodeKind::For || st->kind == A::NodeKind::With ||
               st->kind == A::NodeKind::AugAssign) {
      for_each_assign_target(st, [&](const A::Expr* atom) {
        if (const auto* n = A::as<A::NameExpr>(atom)) note_assign(n->id, nullptr);
      });
    }
  }

  // ---- reference resolution

  struct RefSink {
    SubroutineEntity* sub = nullptr;
    ClassEntity* cls = nullptr;  // owning class for referenced_classes
  };

  void record(RefSink& sink, VariableRef ref) {
    if (sink.sub) sink.sub->referenced_variables.insert(ref);
    if (sink.sub && ref.resolution == RefKind::OwnField) sink.sub->own_field_names.insert(ref.name);
    if (sink.sub && ref.resolution == RefKind::ForeignField && ref.owner)
      sink.sub->foreign_fields.emplace(ref.owner, ref.name);
  }

  void note_class_use(RefSink& sink, ClassEntity* used) {
    if (!used) return;
    if (sink.cls && used != sink.cls) sink.cls->referenced_classes.insert(used);
  }

  // Resolves one expression tree; `ctx` may be null for class-body contexts.
  void resolve_expr(const A::Expr* e, const LocalCtx* ctx, const Scope* scope, RefSink& sink) {
    walk_expr(e, [&](const A::Expr* sub) -> bool {
      if (const auto* n = A::as<A::NameExpr>(sub)) {
        resolve_name(*n, ctx, scope, sink);
        return true;
      }
      if (const auto* at = A::as<A::AttributeExpr>(sub)) {
        resolve_attribute(*at, ctx, scope, sink);
        return true;  // still recurse into the base below
      }
      return true;
    });
  }

  // Denotation used for attribute-chain bases inside subroutine bodies.
  Denotation denote_value(const A::Expr* e, const LocalCtx* ctx, const Scope* scope,
                          bool* is_receiver) {
    if (is_receiver) *is_receiver = false;
    if (!e) return {};
    if (const auto* n = A::as<A::NameExpr>(e)) {
      if (ctx && !ctx->receiver.empty() && n->id == ctx->receiver) {
        if (is_receiver) *is_receiver = true;
        return {};
      }
      if (ctx) {
        for (const LocalCtx* c = ctx; c; c = c->enclosing) {
          auto imp = c->local_imports.find(n->id);
          if (imp != c->local_imports.end()) return imp->second;
          auto ty = c->typed_locals.find(n->id);
          if (ty != c->typed_locals.end()) {
            Denotation d;
            if (ty->second) {
              d.kind = Denotation::Kind::Class;
              d.cls = ty->second;
            }
            return d;
          }
          if (c->params.count(n->id)) {
            // Annotated parameter with an in-project class type.
            for (const auto& p : c->sub->params) {
              if (p.name == n->id && p.annotation) {
                Denotation d = denote_static(p.annotation, &c->sub->module->scope, nullptr, true);
                if (d.kind == Denotation::Kind::Class) return d;
              }
            }
            return {};
          }
          if (c->locals.count(n->id)) return {};
        }
      }
      if (const Denotation* d = scope->lookup(n->id, true)) return *d;
      return {};
    }
    if (const auto* at = A::as<A::AttributeExpr>(e)) {
      bool recv = false;
      Denotation base = denote_value(at->value.get(), ctx, scope, &recv);
      if (recv) return {};  // self.x has no static type
      return member_of(base, at->attr);
    }
    if (const auto* ss = A::as<A::SubscriptExpr>(e))
      return denote_value(ss->value.get(), ctx, scope, nullptr);
    return {};
  }

  void resolve_name(const A::NameExpr& n, const LocalCtx* ctx, const Scope* scope,
                    RefSink& sink) {
    VariableRef ref;
    ref.name = n.id;
    if (ctx) {
      if (!ctx->receiver.empty() && n.id == ctx->receiver) {
        ref.resolution = RefKind::Parameter;
        record(sink, ref);
        return;
      }
      if (ctx->globals_declared.count(n.id)) {
        ref.resolution = RefKind::ModuleGlobal;
        ref.assigned_module_var = true;
        record(sink, ref);
        return;
      }
      if (ctx->nonlocals_declared.count(n.id)) {
        ref.resolution = RefKind::Local;
        record(sink, ref);
        return;
      }
      if (ctx->params.count(n.id)) {
        ref.resolution = RefKind::Parameter;
        record(sink, ref);
        return;
      }
      if (ctx->local_imports.count(n.id)) {
        ref.resolution = RefKind::Imported;
        auto d = ctx->local_imports.at(n.id);
        if (d.kind == Denotation::Kind::Class) note_class_use(sink, d.cls);
        record(sink, ref);
        return;
      }
      if (ctx->locals.count(n.id)) {
        ref.resolution = RefKind::Local;
        auto ty = ctx->typed_locals.find(n.id);
        if (ty != ctx->typed_locals.end() && ty->second) note_class_use(sink, ty->second);
        record(sink, ref);
        return;
      }
      for (const LocalCtx* up = ctx->enclosing; up; up = up->enclosing) {
        if (up->params.count(n.id) || up->locals.count(n.id)) {
          ref.resolution = RefKind::Local;  // closure binding
          record(sink, ref);
          return;
        }
      }
    }
    if (const Denotation* d = scope->lookup(n.id, true)) {
      switch (d->kind) {
        case Denotation::Kind::Class:
          ref.resolution = d->via_import ? RefKind::Imported : RefKind::ModuleGlobal;
          note_class_use(sink, d->cls);
          break;
        case Denotation::Kind::Subroutine:
          ref.resolution = d->via_import ? RefKind::Imported : RefKind::ModuleGlobal;
          break;
        case Denotation::Kind::ModuleVar:
          if (d->via_import) {
            ref.resolution = RefKind::Imported;
          } else {
            ref.resolution = RefKind::ModuleGlobal;
            ref.assigned_module_var = true;
          }
          break;
        case Denotation::Kind::Module:
        case Denotation::Kind::External:
          ref.resolution = RefKind::Imported;
          break;
        case Denotation::Kind::None:
          ref.resolution = RefKind::Unresolved;
          break;
      }
      record(sink, ref);
      return;
    }
    ref.resolution = RefKind::Unresolved;
    record(sink, ref);
  }

  void resolve_attribute(const A::AttributeExpr& at, const LocalCtx* ctx, const Scope* scope,
                         RefSink& sink) {
    bool is_recv = false;
    Denotation base = denote_value(at.value.get(), ctx, scope, &is_recv);
    VariableRef ref;
    ref.name = at.attr;
    if (is_recv && ctx && ctx->sub) {
      ClassEntity* own = owner_class(*ctx->sub);
      if (own) {
        if (own->find_field(at.attr)) {
          ref.resolution = RefKind::OwnField;
          record(sink, ref);
          return;
        }
        if (own->find_method(at.attr)) return;  // method reference, not a variable
      }
      ref.resolution = RefKind::Unresolved;
      record(sink, ref);
      return;
    }
    if (base.kind == Denotation::Kind::Class && base.cls) {
      ClassEntity* c = base.cls;
      note_class_use(sink, c);
      if (c->find_field(at.attr)) {
        ref.resolution = RefKind::ForeignField;
        ref.owner = c;
        record(sink, ref);
        return;
      }
      if (c->find_method(at.attr)) return;
      auto nested = c->scope.bindings.find(at.attr);
      if (nested != c->scope.bindings.end() &&
          nested->second.kind == Denotation::Kind::Class) {
        note_class_use(sink, nested->second.cls);
        return;
      }
      ref.resolution = RefKind::Unresolved;
      record(sink, ref);
      return;
    }
    if (base.kind == Denotation::Kind::Module && base.mod) {
      Denotation member = module_member(*base.mod, at.attr);
      switch (member.kind) {
        case Denotation::Kind::Class:
          note_class_use(sink, member.cls);
          ref.resolution = RefKind::Imported;
          break;
        case Denotation::Kind::Subroutine:
        case Denotation::Kind::ModuleVar:
        case Denotation::Kind::Module:
          ref.resolution = RefKind::Imported;
          break;
        default:
          ref.resolution = RefKind::Unresolved;
          break;
      }
      record(sink, ref);
      return;
    }
    ref.resolution = RefKind::Unresolved;
    record(sink, ref);
  }

  void link_subroutine(SubroutineEntity& s) {
    LocalCtx ctx;
    ctx.sub = &s;
    for (const auto& p : s.params) ctx.params.insert(p.name);
    if (s.is_method && !s.params.empty() && !s.has_decorator("staticmethod"))
      ctx.receiver = s.params[0].name;
    // Enclosing function contexts for closures: parameter/local names only.
    std::vector<std::unique_ptr<LocalCtx>> chain;
    const LocalCtx* enclosing = nullptr;
    for (SubroutineEntity* up = s.enclosing_sub; up; up = up->enclosing_sub) {
      auto c = std::make_unique<LocalCtx>();
      c->sub = up;
      for (const auto& p : up->params) c->params.insert(p.name);
      collect_bindings(*c, up->def->body, *up);
      chain.push_back(std::move(c));
    }
    // chain[0] is the immediate enclosing subroutine; wire outermost first.
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      (*it)->enclosing = enclosing;
      enclosing = it->get();
    }
    ctx.enclosing = enclosing;
    collect_bindings(ctx, s.def->body, s);

    RefSink sink;
    sink.sub = &s;
    sink.cls = owner_class(s);
    const Scope* scope = &s.module->scope;

    // Decorators, defaults, annotations and return annotation are evaluated
    // in the enclosing scope; attribute them to this subroutine.
    for (const auto& d : s.def->decorators) resolve_expr(d.get(), nullptr, scope, sink);
    for (const auto& p : s.def->params) {
      if (p.annotation) resolve_expr(p.annotation.get(), nullptr, scope, sink);
      if (p.default_value) resolve_expr(p.default_value.get(), nullptr, scope, sink);
    }
    if (s.def->returns) resolve_expr(s.def->returns.get(), nullptr, scope, sink);
    // Annotated parameters referencing in-project classes.
    for (const auto& p : s.params) {
      if (!p.annotation) continue;
      Denotation d = denote_static(p.annotation, scope, nullptr, true);
      if (d.kind == Denotation::Kind::Class) note_class_use(sink, d.cls);
    }

    resolve_body(s.def->body, &ctx, scope, sink);
  }

  void resolve_body(const std::vector<A::StmtPtr>& body, const LocalCtx* ctx, const Scope* scope,
                    RefSink& sink) {
    for (const auto& st : body) {
      if (st->kind == A::NodeKind::FunctionDef || st->kind == A::NodeKind::ClassDef)
        continue;  // linked as their own entities
      for_each_stmt_expr(st.get(), [&](const A::Expr* e) { resolve_expr(e, ctx, scope, sink); });
      if (const auto* mt = A::as<A::MatchStmt>(st.get())) {
        for (const auto& mc : mt->cases) resolve_pattern(mc.pattern.get(), ctx, scope, sink);
      }
      for_each_child_block(st.get(), [&](const std::vector<A::StmtPtr>& block) {
        resolve_body(block, ctx, scope, sink);
      });
    }
  }

  // Patterns: dotted names and class-pattern callees are loads; bare names
  // bind and are not loads.
  void resolve_pattern(const A::Expr* p, const LocalCtx* ctx, const Scope* scope, RefSink& sink) {
    if (!p) return;
    switch (p->kind) {
      case A::NodeKind::Attribute:
        resolve_attribute(*static_cast<const A::AttributeExpr*>(p), ctx, scope, sink);
        resolve_expr(static_cast<const A::AttributeExpr*>(p)->value.get(), ctx, scope, sink);
        return;
      case A::NodeKind::Call: {
        const auto* c = static_cast<const A::CallExpr*>(p);
        resolve_expr(c->func.get(), ctx, scope, sink);
        for (const auto& a : c->args) resolve_pattern(a.get(), ctx, scope, sink);
        for (const auto& k : c->keywords) resolve_pattern(k.value.get(), ctx, scope, sink);
        return;
      }
      case A::NodeKind::TupleExpr:
        for (const auto& e : static_cast<const A::TupleExpr*>(p)->elts)
          resolve_pattern(e.get(), ctx, scope, sink);
        return;
      case A::NodeKind::ListExpr:
        for (const auto& e : static_cast<const A::ListExpr*>(p)->elts)
          resolve_pattern(e.get(), ctx, scope, sink);
        return;
      case A::NodeKind::DictExpr: {
        const auto* d = static_cast<const A::DictExpr*>(p);
        for (const auto& k : d->keys)
          if (k && k->kind == A::NodeKind::Attribute)
            resolve_pattern(k.get(), ctx, scope, sink);
        for (const auto& v : d->values) resolve_pattern(v.get(), ctx, scope, sink);
        return;
      }
      case A::NodeKind::BinOp: {
        const auto* b = static_cast<const A::BinOpExpr*>(p);
        resolve_pattern(b->left.get(), ctx, scope, sink);
        resolve_pattern(b->right.get(), ctx, scope, sink);
        return;
      }
      default:
        return;  // bare names bind; literals carry no references
    }
  }

  void link_class_body(ClassEntity& c) {
    RefSink sink;
    sink.cls = &c;
    const Scope* scope = &c.module->scope;
    for (const auto& d : c.def->decorators) resolve_expr(d.get(), nullptr, scope, sink);
    for (const auto& kw : c.def->keywords) resolve_expr(kw.value.get(), nullptr, scope, sink);
    for (const auto& st : c.def->body) {
      if (st->kind == A::NodeKind::FunctionDef || st->kind == A::NodeKind::ClassDef) continue;
      for_each_stmt_expr(st.get(), [&](const A::Expr* e) { resolve_expr(e, nullptr, scope, sink); });
      for_each_child_block(st.get(), [&](const std::vector<A::StmtPtr>& block) {
        resolve_class_block(block, scope, sink);
      });
    }
  }

  void resolve_class_block(const std::vector<A::StmtPtr>& body, const Scope* scope,
                           RefSink& sink) {
    for (const auto& st : body) {
      if (st->kind == A::NodeKind::FunctionDef || st->kind == A::NodeKind::ClassDef) continue;
      for_each_stmt_expr(st.get(), [&](const A::Expr* e) { resolve_expr(e, nullptr, scope, sink); });
      for_each_child_block(st.get(), [&](const std::vector<A::StmtPtr>& block) {
        resolve_class_block(block, scope, sink);
      });
    }
  }

  void compute_uses_global(ClassEntity& c) {
    for (auto* m : c.methods) {
      if (m->has_global_stmt) {
        c.uses_global = true;
        return;
      }
      for (const auto& r : m->referenced_variables) {
        if (r.resolution == RefKind::ModuleGlobal && r.assigned_module_var) {
          c.uses_global = true;
          return;
        }
      }
    }
  }
};

}  // namespace

std::unique_ptr<Project> build_skeleton(std::vector<ModuleInput> modules,
                                        const std::string& project_name,
                                        const std::string& root_path) {
  auto proj = std::make_unique<Project>();
  proj->name = project_name;
  proj->root_path = root_path;
  std::sort(modules.begin(), modules.end(),
            [](const ModuleInput& a, const ModuleInput& b) { return a.rel_path < b.rel_path; });
  for (auto& input : modules) {
    if (proj->by_rel_path.count(input.rel_path))
      throw std::runtime_error("duplicate module path: " + input.rel_path);
    proj->modules.emplace_back();
    ModuleEntity& m = proj->modules.back();
    m.rel_path = input.rel_path;
    m.dotted = dotted_of(input.rel_path);
    m.project = proj.get();
    m.is_test = is_test_path(input.rel_path);
    m.parsed = std::move(input.parsed);
    proj->by_rel_path[m.rel_path] = &m;
    if (!m.dotted.empty()) proj->by_dotted.emplace(m.dotted, &m);
  }
  for (auto& m : proj->modules) {
    SkeletonBuilder builder(*proj, m);
    builder.run();
  }
  // Stable ids in deterministic order.
  int next_id = 1;
  for (auto& m : proj->modules) m.id = next_id++;
  for (auto& c : proj->classes) c.id = next_id++;
  for (auto& s : proj->subroutines) s.id = next_id++;
  return proj;
}

void link_references(Project& project) {
  Linker linker(project);
  linker.run();
}

}  // namespace dscan::model
