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

#ifndef DSCAN_MODEL_BUILDER_HPP
#define DSCAN_MODEL_BUILDER_HPP

#include <memory>
#include <string>
#include <vector>

#include "dscan/model/entities.hpp"

namespace dscan::model {

struct ModuleInput {
  std::string rel_path;  // forward slashes
  std::shared_ptr<frontend::ParsedModule> parsed;
};

/// First pass: creates Module/Class/Subroutine entities with names,
/// parameters, textual base names, field records and module-level variables.
/// No cross-entity links yet. Throws std::runtime_error on duplicate module
/// paths (a corpus bug).
std::unique_ptr<Project> build_skeleton(std::vector<ModuleInput> modules,
                                        const std::string& project_name,
                                        const std::string& root_path);

/// Second pass: resolves imports, base classes and every name reference.
/// Unresolvable references become RefKind::Unresolved; never aborts.
/// Idempotent: derived state is recomputed from the skeleton.
void link_references(Project& project);

}  // namespace dscan::model

#endif  // DSCAN_MODEL_BUILDER_HPP
