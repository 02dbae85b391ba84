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

#include "dscan/report/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace dscan::report {

using detect::DefectKind;
using detect::Finding;
using nlohmann::json;

double compute_density(long found, long loc) {
  if (loc <= 0) return 0.0;
  return static_cast<double>(found) / static_cast<double>(loc) * 10000.0;
}

std::string format_density(double density) {
  long long cents = std::llround(density * 100.0);  // half away from zero
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%lld.%02lld", cents / 100, cents % 100);
  return buf;
}

long Report::total_found() const {
  long total = 0;
  for (const auto& row : per_kind) total += row.found;
  return total;
}

Report build_report(const std::vector<pipeline::ProjectResult>& results, bool include_tests) {
  Report r;
  r.include_tests = include_tests;
  for (const auto& pr : results) {
    r.loc_production += pr.loc_production;
    r.loc_test += pr.loc_test;
    r.files_total += pr.files_total;
    r.files_parsed += pr.files_parsed;
    long project_loc = pr.loc_production + (include_tests ? pr.loc_test : 0);
    r.per_project_loc[pr.name] = project_loc;
    auto& found = r.per_project_found[pr.name];
    found.fill(0);
    for (const auto& f : pr.findings) {
      size_t k = static_cast<size_t>(f.kind);
      if (f.is_test) r.found_test[k] += 1;
      else r.found_production[k] += 1;
      if (f.is_test && !include_tests) continue;
      found[k] += 1;
      r.per_kind[k].found += 1;
    }
  }
  r.parse_ratio = r.files_total == 0
                      ? 1.0
                      : static_cast<double>(r.files_parsed) / static_cast<double>(r.files_total);
  r.loc_basis = r.loc_production + (include_tests ? r.loc_test : 0);
  r.zero_loc_warning = r.loc_basis == 0;

  double smell_sum = 0, anti_sum = 0, all_sum = 0, detected_sum = 0;
  int smells = 0, antis = 0, detected = 0;
  for (int k = 0; k < detect::kDefectKindCount; ++k) {
    auto& row = r.per_kind[static_cast<size_t>(k)];
    row.density_raw = compute_density(row.found, r.loc_basis);
    all_sum += row.density_raw;
    if (detect::is_smell(static_cast<DefectKind>(k))) {
      smell_sum += row.density_raw;
      ++smells;
    } else {
      anti_sum += row.density_raw;
      ++antis;
    }
    if (row.found > 0) {
      detected_sum += row.density_raw;
      ++detected;
    }
  }
  r.smells_mean_density = smells ? smell_sum / smells : 0.0;
  r.antipatterns_mean_density = antis ? anti_sum / antis : 0.0;
  r.overall_mean_all_kinds = all_sum / detect::kDefectKindCount;
  r.overall_mean_detected = detected ? detected_sum / detected : 0.0;
  r.overall_pooled = compute_density(r.total_found(), r.loc_basis);
  return r;
}

void emit_table(std::ostream& out, const Report& r) {
  if (r.files_total == 0 || r.zero_loc_warning)
    out << "warning: empty corpus (no code lines analyzed)\n";
  char line[160];
  std::snprintf(line, sizeof(line), "%-26s %10s %12s %10s\n", "Design Defect", "Found", "LOC",
                "Density");
  out << line;
  out << std::string(62, '-') << "\n";
  for (int k = 0; k < detect::kDefectKindCount; ++k) {
    const auto& row = r.per_kind[static_cast<size_t>(k)];
    std::snprintf(line, sizeof(line), "%-26s %10ld %12ld %10s\n",
                  detect::defect_name(static_cast<DefectKind>(k)), row.found, r.loc_basis,
                  format_density(row.density_raw).c_str());
    out << line;
  }
  out << std::string(62, '-') << "\n";
  std::snprintf(line, sizeof(line), "%-50s %10s\n", "Code smells (mean density)",
                format_density(r.smells_mean_density).c_str());
  out << line;
  std::snprintf(line, sizeof(line), "%-50s %10s\n", "Antipatterns (mean density)",
                format_density(r.antipatterns_mean_density).c_str());
  out << line;
  std::snprintf(line, sizeof(line), "%-50s %10s\n", "Overall mean (all kinds)",
                format_density(r.overall_mean_all_kinds).c_str());
  out << line;
  std::snprintf(line, sizeof(line), "%-50s %10s\n", "Overall mean (detected kinds)",
                format_density(r.overall_mean_detected).c_str());
  out << line;
  std::snprintf(line, sizeof(line), "%-50s %10s\n", "Pooled density (all findings)",
                format_density(r.overall_pooled).c_str());
  out << line;
}

void emit_csv(std::ostream& out, const Report& r) {
  out << "project,kind,found,loc,density\n";
  for (const auto& [project, found] : r.per_project_found) {
    long loc = r.per_project_loc.at(project);
    for (int k = 0; k < detect::kDefectKindCount; ++k) {
      double density = compute_density(found[static_cast<size_t>(k)], loc);
      out << project << ',' << detect::defect_id(static_cast<DefectKind>(k)) << ','
          << found[static_cast<size_t>(k)] << ',' << loc << ',' << format_density(density)
          << "\n";
    }
  }
}

namespace {

json finding_to_json(const Finding& f) {
  json j;
  j["project"] = f.project;
  j["entity"] = f.entity;
  j["kind"] = detect::defect_id(f.kind);
  j["is_test"] = f.is_test;
  j["evidence"] = f.evidence;
  j["thresholds"] = f.thresholds;
  j["gates"] = f.gates;
  return j;
}

json kind_row_json(const KindRow& row, long loc) {
  json j;
  j["found"] = row.found;
  j["loc"] = loc;
  j["density_raw"] = row.density_raw;
  j["density"] = format_density(row.density_raw);
  return j;
}

}  // namespace

std::string to_json(const std::vector<pipeline::ProjectResult>& results, const Report& r,
                    const Config& config) {
  json doc;
  doc["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  doc["config"] = json::parse(config.echo_json());

  json projects = json::array();
  for (const auto& pr : results) {
    json p;
    p["name"] = pr.name;
    p["root"] = pr.root;
    p["files"] = pr.files_total;
    p["parsed"] = pr.files_parsed;
    p["parse_ratio"] = pr.parse_ratio;
    p["classes"] = static_cast<long>(pr.model->classes.size());
    p["subroutines"] = static_cast<long>(pr.model->subroutines.size());
    p["loc_production"] = pr.loc_production;
    p["loc_test"] = pr.loc_test;
    json failed = json::array();
    for (const auto& ff : pr.failed_files)
      failed.push_back({{"path", ff.rel_path},
                        {"line", ff.line},
                        {"col", ff.col},
                        {"message", ff.message}});
    p["failed_files"] = failed;
    json warnings = json::array();
    for (const auto& w : pr.warnings) warnings.push_back(w);
    p["warnings"] = warnings;
    projects.push_back(p);
  }
  doc["corpus"]["projects"] = projects;
  doc["corpus"]["totals"] = {
      {"files", r.files_total},         {"parsed", r.files_parsed},
      {"parse_ratio", r.parse_ratio},   {"loc_production", r.loc_production},
      {"loc_test", r.loc_test},         {"loc_total", r.loc_production + r.loc_test},
  };

  json findings = json::array();
  for (const auto& pr : results)
    for (const auto& f : pr.findings) findings.push_back(finding_to_json(f));
  doc["findings"] = findings;

  json rep;
  rep["include_tests"] = r.include_tests;
  rep["loc_basis"] = r.loc_basis;
  rep["zero_loc_warning"] = r.zero_loc_warning;
  json per_kind;
  for (int k = 0; k < detect::kDefectKindCount; ++k)
    per_kind[detect::defect_id(static_cast<DefectKind>(k))] =
        kind_row_json(r.per_kind[static_cast<size_t>(k)], r.loc_basis);
  rep["per_kind"] = per_kind;

  json per_project;
  for (const auto& [project, found] : r.per_project_found) {
    json rows;
    long loc = r.per_project_loc.at(project);
    for (int k = 0; k < detect::kDefectKindCount; ++k) {
      KindRow row;
      row.found = found[static_cast<size_t>(k)];
      row.density_raw = compute_density(row.found, loc);
      rows[detect::defect_id(static_cast<DefectKind>(k))] = kind_row_json(row, loc);
    }
    per_project[project] = rows;
  }
  rep["per_project"] = per_project;

  json partitions;
  for (int part = 0; part < 2; ++part) {
    const auto& found = part == 0 ? r.found_production : r.found_test;
    json counts;
    for (int k = 0; k < detect::kDefectKindCount; ++k)
      counts[detect::defect_id(static_cast<DefectKind>(k))] = found[static_cast<size_t>(k)];
    partitions[part == 0 ? "production" : "test"] = {
        {"found", counts}, {"loc", part == 0 ? r.loc_production : r.loc_test}};
  }
  rep["partitions"] = partitions;

  rep["groups"] = {
      {"code_smells_mean_density_raw", r.smells_mean_density},
      {"code_smells_mean_density", format_density(r.smells_mean_density)},
      {"antipatterns_mean_density_raw", r.antipatterns_mean_density},
      {"antipatterns_mean_density", format_density(r.antipatterns_mean_density)},
  };
  rep["overall"] = {
      {"mean_all_kinds_raw", r.overall_mean_all_kinds},
      {"mean_all_kinds", format_density(r.overall_mean_all_kinds)},
      {"mean_detected_kinds_raw", r.overall_mean_detected},
      {"mean_detected_kinds", format_density(r.overall_mean_detected)},
      {"pooled_raw", r.overall_pooled},
      {"pooled", format_density(r.overall_pooled)},
  };
  doc["report"] = rep;
  return doc.dump(2) + "\n";
}

void dump_metrics_csv(std::ostream& out, const std::vector<pipeline::ProjectResult>& results) {
  std::vector<std::string> rows;
  char buf[512];
  for (const auto& pr : results) {
    for (const auto& [sub, m] : pr.metrics.subroutine_metrics) {
      const std::pair<const char*, long> cells[] = {
          {"LOC_method", m.loc}, {"NOP", m.nop}, {"AID", m.aid}, {"ALD", m.ald}, {"NRC", m.nrc}};
      for (const auto& [name, value] : cells) {
        std::snprintf(buf, sizeof(buf), "%s,subroutine,%s,%s,%ld", pr.name.c_str(),
                      sub->entity_path().c_str(), name, value);
        rows.emplace_back(buf);
      }
    }
    for (const auto& [cls, m] : pr.metrics.class_metrics) {
      const std::pair<const char*, long> cells[] = {
          {"LOC_class", m.loc}, {"NMD", m.nmd},     {"NAD", m.nad},
          {"AOPuF", m.aopuf},   {"AOPrF", m.aoprf}, {"AOA", m.aoa},
          {"LCOM", m.lcom},     {"SUP", m.sup},     {"MNP", m.mnp}};
      for (const auto& [name, value] : cells) {
        std::snprintf(buf, sizeof(buf), "%s,class,%s,%s,%ld", pr.name.c_str(),
                      cls->entity_path().c_str(), name, value);
        rows.emplace_back(buf);
      }
    }
  }
  std::sort(rows.begin(), rows.end());
  out << "project,entity_kind,entity_path,metric,value\n";
  for (const auto& row : rows) out << row << "\n";
}

std::string dump_model_json(const std::vector<pipeline::ProjectResult>& results) {
  json doc = json::array();
  for (const auto& pr : results) {
    json p;
    p["project"] = pr.name;
    json modules = json::array();
    for (const auto& m : pr.model->modules) {
      json jm;
      jm["id"] = m.id;
      jm["path"] = m.rel_path;
      jm["dotted"] = m.dotted;
      jm["is_test"] = m.is_test;
      jm["loc"] = m.effective_loc();
      json vars = json::array();
      for (const auto& [name, line] : m.variables) vars.push_back(name);
      jm["variables"] = vars;
      json imports = json::array();
      for (const auto& link : m.imports) {
        json ji;
        ji["text"] = link.text;
        ji["binding"] = link.binding;
        switch (link.target.kind) {
          case model::Denotation::Kind::Module:
            ji["target"] = {{"kind", "module"}, {"id", link.target.mod->id}};
            break;
          case model::Denotation::Kind::Class:
            ji["target"] = {{"kind", "class"}, {"id", link.target.cls->id}};
            break;
          case model::Denotation::Kind::Subroutine:
            ji["target"] = {{"kind", "subroutine"}, {"id", link.target.sub->id}};
            break;
          case model::Denotation::Kind::ModuleVar:
            ji["target"] = {{"kind", "variable"},
                            {"module", link.target.mod->id},
                            {"name", link.target.var_name}};
            break;
          default:
            ji["target"] = {{"kind", "external"}};
        }
        imports.push_back(ji);
      }
      jm["imports"] = imports;
      json classes = json::array();
      for (const auto* c : m.classes) {
        json jc;
        jc["id"] = c->id;
        jc["name"] = c->qualname;
        jc["span"] = {c->span_first, c->span_last};
        jc["uses_global"] = c->uses_global;
        if (c->parent_class) jc["parent_class"] = c->parent_class->id;
        json bases = json::array();
        for (const auto& b : c->resolved_bases) {
          json jb;
          jb["text"] = b.text;
          if (b.target) jb["target"] = b.target->id;
          else jb["target"] = "external";
          bases.push_back(jb);
        }
        jc["bases"] = bases;
        json fields = json::array();
        for (const auto& f : c->fields)
          fields.push_back({{"name", f.name},
                            {"visibility",
                             f.visibility == model::Visibility::Public ? "public" : "private"}});
        jc["fields"] = fields;
        json method_ids = json::array();
        for (const auto* mth : c->methods) method_ids.push_back(mth->id);
        jc["methods"] = method_ids;
        json refs = json::array();
        std::vector<int> ref_ids;
        for (const auto* rc : c->referenced_classes) ref_ids.push_back(rc->id);
        std::sort(ref_ids.begin(), ref_ids.end());
        for (int id : ref_ids) refs.push_back(id);
        jc["referenced_classes"] = refs;
        classes.push_back(jc);
      }
      jm["classes"] = classes;
      json subs = json::array();
      for (const auto* s : m.subroutines) {
        json js;
        js["id"] = s->id;
        js["name"] = s->qualname;
        js["span"] = {s->span_first, s->span_last};
        js["is_method"] = s->is_method;
        js["is_concrete"] = s->is_concrete;
        js["nop"] = s->nop();
        json params = json::array();
        for (const auto& param : s->params) params.push_back(param.name);
        js["parameters"] = params;
        js["decorators"] = s->decorators;
        json refs = json::array();
        for (const auto& r : s->referenced_variables) {
          json jr;
          jr["name"] = r.name;
          jr["resolution"] = model::ref_kind_name(r.resolution);
          if (r.owner) jr["owner"] = r.owner->id;
          refs.push_back(jr);
        }
        js["referenced_variables"] = refs;
        subs.push_back(js);
      }
      jm["subroutines"] = subs;
      modules.push_back(jm);
    }
    p["modules"] = modules;
    doc.push_back(p);
  }
  return doc.dump(2) + "\n";
}

std::vector<Finding> findings_from_json(const std::string& text) {
  json doc = json::parse(text);
  const json& arr = doc.contains("findings") ? doc["findings"] : doc;
  if (!arr.is_array()) throw std::runtime_error("no findings array in document");
  std::vector<Finding> findings;
  for (const auto& j : arr) {
    Finding f;
    f.project = j.at("project").get<std::string>();
    f.entity = j.at("entity").get<std::string>();
    auto kind = detect::defect_from_id(j.at("kind").get<std::string>());
    if (!kind) throw std::runtime_error("unknown defect kind in findings document");
    f.kind = *kind;
    f.is_test = j.value("is_test", false);
    for (const auto& [k, v] : j.at("evidence").items()) f.evidence[k] = v.get<long>();
    for (const auto& [k, v] : j.at("thresholds").items()) f.thresholds[k] = v.get<double>();
    if (j.contains("gates"))
      for (const auto& [k, v] : j.at("gates").items()) f.gates[k] = v.get<bool>();
    findings.push_back(std::move(f));
  }
  return findings;
}

void explain_finding(std::ostream& out, const Finding& f) {
  out << detect::defect_name(f.kind) << " at " << f.entity << " (project " << f.project << ")";
  if (f.is_test) out << " [test code]";
  out << "\n";
  if (!f.gates.empty()) {
    out << "  gates:\n";
    for (const auto& [k, v] : f.gates) out << "    " << k << " = " << (v ? "true" : "false") << "\n";
  }
  out << "  evidence:\n";
  for (const auto& [k, v] : f.evidence) out << "    " << k << " = " << v << "\n";
  out << "  confirming thresholds:\n";
  char buf[160];
  for (const auto& [k, v] : f.thresholds) {
    std::snprintf(buf, sizeof(buf), "    %s = %g\n", k.c_str(), v);
    out << buf;
  }
  out << "  formula re-check: " << (detect::audit_finding(f) ? "holds" : "VIOLATED") << "\n";
}

}  // namespace dscan::report
