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

#ifndef DSCAN_MODEL_ENTITIES_HPP
#define DSCAN_MODEL_ENTITIES_HPP

#include <deque>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "dscan/frontend/frontend.hpp"

namespace dscan::model {

struct Project;
struct ModuleEntity;
struct ClassEntity;
struct SubroutineEntity;

enum class Visibility : uint8_t { Public, Private };

struct FieldRecord {
  std::string name;
  Visibility visibility = Visibility::Public;
  int line = 0;
};

enum class RefKind : uint8_t {
  Local, Parameter, OwnField, ForeignField, ModuleGlobal, Imported, Unresolved,
};

const char* ref_kind_name(RefKind k);

struct VariableRef {
  std::string name;
  RefKind resolution = RefKind::Unresolved;
  const ClassEntity* owner = nullptr;  // ForeignField: owning class
  bool assigned_module_var = false;    // ModuleGlobal: hits an assigned variable
                                       // (not a def/class/import binding)
  bool operator<(const VariableRef& o) const;
  bool operator==(const VariableRef& o) const;
};

/// What a name statically denotes in a scope.
struct Denotation {
  enum class Kind : uint8_t { None, Class, Subroutine, ModuleVar, Module, External };
  Kind kind = Kind::None;
  ClassEntity* cls = nullptr;
  SubroutineEntity* sub = nullptr;
  ModuleEntity* mod = nullptr;  // Module target, or owning module of a ModuleVar
  bool via_import = false;
  std::string var_name;
};

struct Scope {
  const Scope* parent = nullptr;
  bool is_class_scope = false;
  std::map<std::string, Denotation> bindings;

  /// Innermost binding wins; class scopes are skipped when `skip_class`
  /// (function bodies do not see enclosing class scopes).
  const Denotation* lookup(const std::string& name, bool skip_class = true) const;
};

struct ImportLink {
  std::string text;     // e.g. "import os", "from pkg.mod import Name as N"
  std::string binding;  // local name bound; "*" for star imports
  Denotation target;    // External when no project-internal match exists
  int line = 0;
};

struct ParamInfo {
  std::string name;
  frontend::ast::ParamKind kind = frontend::ast::ParamKind::PositionalOrKeyword;
  const frontend::ast::Expr* annotation = nullptr;  // non-owning
};

struct SubroutineEntity {
  int id = 0;
  std::string name;
  std::string qualname;  // e.g. "Outer::method" or "function"
  ModuleEntity* module = nullptr;
  ClassEntity* parent_class = nullptr;     // enclosing class entity, if any
  SubroutineEntity* enclosing_sub = nullptr;
  bool is_method = false;  // def directly in a class body
  bool is_async = false;
  bool is_concrete = true;
  std::vector<ParamInfo> params;
  std::vector<std::string> decorators;  // compact dotted text
  int span_first = 0, span_last = 0;    // def line .. last body line
  const frontend::ast::FunctionDefStmt* def = nullptr;

  // Populated by link_references.
  bool has_global_stmt = false;
  std::set<VariableRef> referenced_variables;
  std::set<std::string> own_field_names;
  std::set<std::pair<const ClassEntity*, std::string>> foreign_fields;

  /// Parameter count as seen by callers: the implicit receiver of a method
  /// is excluded; *args and **kwargs each count as one.
  int nop() const;
  bool has_decorator(const std::string& last_component) const;
  std::string entity_path() const;
};

struct BaseLink {
  std::string text;
  ClassEntity* target = nullptr;  // null = External
};

struct ClassEntity {
  int id = 0;
  std::string name;
  std::string qualname;
  ModuleEntity* module = nullptr;
  ClassEntity* parent_class = nullptr;  // lexical parent class, if nested
  SubroutineEntity* enclosing_sub = nullptr;
  std::vector<std::string> base_texts;
  std::vector<BaseLink> resolved_bases;
  std::vector<SubroutineEntity*> methods;  // defs directly in the class body
  std::vector<FieldRecord> fields;         // deduplicated by name
  std::set<const ClassEntity*> referenced_classes;
  bool uses_global = false;
  std::vector<std::string> decorators;
  int span_first = 0, span_last = 0;
  const frontend::ast::ClassDefStmt* def = nullptr;
  Scope scope;  // class-body bindings, for base resolution of nested classes

  const FieldRecord* find_field(const std::string& n) const;
  SubroutineEntity* find_method(const std::string& n) const;
  std::string entity_path() const;
};

struct ModuleEntity {
  int id = 0;
  std::string rel_path;  // forward slashes, relative to the project root
  std::string dotted;    // import path; empty for a root __init__.py
  Project* project = nullptr;
  bool is_test = false;
  std::vector<ClassEntity*> classes;            // all classes in the module
  std::vector<SubroutineEntity*> subroutines;   // all subroutines in the module
  std::map<std::string, int> variables;         // module-level assigned name -> first line
  std::vector<ImportLink> imports;
  Scope scope;
  std::shared_ptr<frontend::ParsedModule> parsed;

  int effective_loc() const { return parsed ? parsed->effective_loc() : 0; }
};

struct Project {
  std::string name;
  std::string root_path;
  std::deque<ModuleEntity> modules;
  std::deque<ClassEntity> classes;
  std::deque<SubroutineEntity> subroutines;
  std::map<std::string, ModuleEntity*> by_dotted;
  std::map<std::string, ModuleEntity*> by_rel_path;
  bool linked = false;

  long total_effective_loc() const;
};

/// True iff the file name or any path segment contains the substring
/// "test" or "Test" (plain substring match, as published).
bool is_test_path(const std::string& path);

}  // namespace dscan::model

#endif  // DSCAN_MODEL_ENTITIES_HPP
