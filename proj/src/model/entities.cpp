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

#include "dscan/model/entities.hpp"

#include <tuple>

namespace dscan::model {

const char* ref_kind_name(RefKind k) {
  switch (k) {
    case RefKind::Local: return "local";
    case RefKind::Parameter: return "parameter";
    case RefKind::OwnField: return "own_field";
    case RefKind::ForeignField: return "foreign_field";
    case RefKind::ModuleGlobal: return "module_global";
    case RefKind::Imported: return "imported";
    case RefKind::Unresolved: return "unresolved";
  }
  return "?";
}

bool VariableRef::operator<(const VariableRef& o) const {
  return std::tie(name, resolution, owner, assigned_module_var) <
         std::tie(o.name, o.resolution, o.owner, o.assigned_module_var);
}

bool VariableRef::operator==(const VariableRef& o) const {
  return !(*this < o) && !(o < *this);
}

const Denotation* Scope::lookup(const std::string& name, bool skip_class) const {
  for (const Scope* s = this; s; s = s->parent) {
    if (skip_class && s->is_class_scope && s != this) continue;
    auto it = s->bindings.find(name);
    if (it != s->bindings.end()) return &it->second;
  }
  return nullptr;
}

int SubroutineEntity::nop() const {
  int n = static_cast<int>(params.size());
  bool has_receiver = is_method && !has_decorator("staticmethod") && !params.empty() &&
                      (params[0].kind == frontend::ast::ParamKind::PositionalOnly ||
                       params[0].kind == frontend::ast::ParamKind::PositionalOrKeyword);
  if (has_receiver) --n;
  return n;
}

namespace {
std::string last_component(const std::string& text) {
  std::string t = text;
  auto paren = t.find('(');
  if (paren != std::string::npos) t.resize(paren);
  auto dot = t.rfind('.');
  return dot == std::string::npos ? t : t.substr(dot + 1);
}
}  // namespace

bool SubroutineEntity::has_decorator(const std::string& want) const {
  for (const auto& d : decorators)
    if (last_component(d) == want) return true;
  return false;
}

std::string SubroutineEntity::entity_path() const {
  return module->rel_path + "::" + qualname;
}

const FieldRecord* ClassEntity::find_field(const std::string& n) const {
  for (const auto& f : fields)
    if (f.name == n) return &f;
  return nullptr;
}

SubroutineEntity* ClassEntity::find_method(const std::string& n) const {
  for (auto* m : methods)
    if (m->name == n) return m;
  return nullptr;
}

std::string ClassEntity::entity_path() const {
  return module->rel_path + "::" + qualname;
}

long Project::total_effective_loc() const {
  long total = 0;
  for (const auto& m : modules) total += m.effective_loc();
  return total;
}

bool is_test_path(const std::string& path) {
  return path.find("test") != std::string::npos ||
         path.find("Test") != std::string::npos;
}

}  // namespace dscan::model
