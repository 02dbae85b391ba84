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

#include "dscan/detect/detect.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <tuple>

namespace dscan::detect {

namespace A = frontend::ast;
using metrics::MetricId;

const char* defect_name(DefectKind k) {
  switch (k) {
    case DefectKind::FeatureEnvy: return "Feature Envy";
    case DefectKind::DataClass: return "Data Class";
    case DefectKind::LongMethod: return "Long Method";
    case DefectKind::LongParameterList: return "Long Parameter List";
    case DefectKind::LargeClass: return "Large Class";
    case DefectKind::GodClass: return "God Class";
    case DefectKind::SwissArmyKnife: return "Swiss Army Knife";
    case DefectKind::FunctionalDecomposition: return "Functional Decomposition";
    case DefectKind::SpaghettiCode: return "Spaghetti Code";
  }
  return "?";
}

const char* defect_id(DefectKind k) {
  switch (k) {
    case DefectKind::FeatureEnvy: return "feature_envy";
    case DefectKind::DataClass: return "data_class";
    case DefectKind::LongMethod: return "long_method";
    case DefectKind::LongParameterList: return "long_parameter_list";
    case DefectKind::LargeClass: return "large_class";
    case DefectKind::GodClass: return "god_class";
    case DefectKind::SwissArmyKnife: return "swiss_army_knife";
    case DefectKind::FunctionalDecomposition: return "functional_decomposition";
    case DefectKind::SpaghettiCode: return "spaghetti_code";
  }
  return "?";
}

std::optional<DefectKind> defect_from_id(const std::string& id) {
  for (int i = 0; i < kDefectKindCount; ++i) {
    auto k = static_cast<DefectKind>(i);
    if (id == defect_id(k)) return k;
  }
  return std::nullopt;
}

bool is_smell(DefectKind k) {
  switch (k) {
    case DefectKind::FeatureEnvy:
    case DefectKind::DataClass:
    case DefectKind::LongMethod:
    case DefectKind::LongParameterList:
    case DefectKind::LargeClass:
      return true;
    default:
      return false;
  }
}

NameLexicon NameLexicon::defaults() {
  NameLexicon lex;
  lex.controller_words = {"manage", "manager",  "process", "processor", "control",
                          "controller", "drive", "driver", "handle", "handler"};
  lex.procedural_words = {"make", "create", "exec", "execute", "compute",
                          "calculate", "build", "init", "run", "do"};
  return lex;
}

namespace {
std::string to_lower(const std::string& s) {
  std::string out = s;
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}
}  // namespace

bool name_contains_word(const std::string& name, const std::vector<std::string>& words) {
  std::string lowered = to_lower(name);
  for (const auto& w : words)
    if (!w.empty() && lowered.find(w) != std::string::npos) return true;
  return false;
}

bool is_controller_name(const std::string& name, const NameLexicon& lexicon) {
  return name_contains_word(name, lexicon.controller_words);
}

bool is_procedural_name(const std::string& name, const NameLexicon& lexicon) {
  return name_contains_word(name, lexicon.procedural_words);
}

bool is_accessor(const model::SubroutineEntity& s) {
  const std::string& n = s.name;
  if (n.rfind("get_", 0) == 0 || n.rfind("set_", 0) == 0) return true;
  if (n.size() > 3 && (n.rfind("get", 0) == 0 || n.rfind("set", 0) == 0) &&
      std::isupper(static_cast<unsigned char>(n[3])))
    return true;
  if (s.has_decorator("property") || s.has_decorator("setter")) return true;

  if (!s.def || s.def->body.size() != 1) return false;
  if (s.params.empty() || s.has_decorator("staticmethod")) return false;
  const std::string& recv = s.params[0].name;
  const A::Stmt* only = s.def->body[0].get();
  auto is_recv_attr = [&](const A::Expr* e) {
    const auto* at = A::as<A::AttributeExpr>(e);
    if (!at) return false;
    const auto* base = A::as<A::NameExpr>(at->value.get());
    return base && base->id == recv;
  };
  if (const auto* ret = A::as<A::ReturnStmt>(only)) {
    return ret->value && is_recv_attr(ret->value.get());
  }
  if (const auto* assign = A::as<A::AssignStmt>(only)) {
    if (assign->targets.size() != 1 || !is_recv_attr(assign->targets[0].get())) return false;
    const auto* value = A::as<A::NameExpr>(assign->value.get());
    if (!value) return false;
    for (size_t i = 1; i < s.params.size(); ++i)
      if (s.params[i].name == value->id) return true;
  }
  return false;
}

bool Finding::operator<(const Finding& o) const {
  return std::tie(project, entity, kind) < std::tie(o.project, o.entity, o.kind);
}

// --------------------------------------------------------------------- audit

namespace {

bool has(const std::map<std::string, long>& m, const char* k) { return m.count(k) > 0; }

bool fence_holds(const Finding& f, const std::string& metric) {
  long v = f.evidence.at(metric);
  double fence = f.thresholds.at(metric + ".fence");
  double base = f.thresholds.at(metric + ".base");
  return static_cast<double>(v) > base && static_cast<double>(v) >= fence;
}

bool rank_holds(const Finding& f, const std::string& metric) {
  long v = f.evidence.at(metric);
  return static_cast<double>(v) >= f.thresholds.at(metric + ".top_threshold");
}

}  // namespace

bool audit_finding(const Finding& f) {
  try {
    switch (f.kind) {
      case DefectKind::FeatureEnvy: {
        long aid = f.evidence.at("AID");
        long ald = f.evidence.at("ALD");
        long nrc = f.evidence.at("NRC");
        if (!(static_cast<double>(aid) > f.thresholds.at("AID.gt"))) return false;
        if (!rank_holds(f, "AID")) return false;
        if (f.thresholds.count("ALD.lt")) {
          if (!(static_cast<double>(ald) < f.thresholds.at("ALD.lt"))) return false;
        } else {
          if (!(static_cast<double>(ald) > f.thresholds.at("ALD.gt"))) return false;
        }
        return static_cast<double>(nrc) < f.thresholds.at("NRC.lt");
      }
      case DefectKind::DataClass:
        return fence_holds(f, "AOPuF") || fence_holds(f, "AOA");
      case DefectKind::LongMethod:
        return fence_holds(f, "LOC_method");
      case DefectKind::LongParameterList:
        return fence_holds(f, "NOP");
      case DefectKind::LargeClass:
        if (!has(f.evidence, "NMD") || !has(f.evidence, "NAD")) return false;
        if (f.evidence.at("NMD") + f.evidence.at("NAD") != f.evidence.at("NMD_plus_NAD"))
          return false;
        return fence_holds(f, "NMD_plus_NAD");
      case DefectKind::GodClass:
        return f.gates.at("IsController") && fence_holds(f, "LOC_class") &&
               fence_holds(f, "LCOM") &&
               static_cast<double>(f.evidence.at("RDC")) > f.thresholds.at("RDC.gt");
      case DefectKind::SwissArmyKnife:
        return fence_holds(f, "SUP");
      case DefectKind::FunctionalDecomposition:
        return f.gates.at("HasProceduralName") &&
               f.evidence.at("SUP") == static_cast<long>(f.thresholds.at("SUP.eq")) &&
               static_cast<double>(f.evidence.at("RCOMPF")) > f.thresholds.at("RCOMPF.gt");
      case DefectKind::SpaghettiCode:
        return f.gates.at("HasProceduralName") && f.gates.at("UsesGlobals") &&
               f.gates.at("HasLongMethod") &&
               f.evidence.at("SUP") == static_cast<long>(f.thresholds.at("SUP.eq")) &&
               static_cast<double>(f.evidence.at("max_method_LOC")) >=
                   f.thresholds.at("method_LOC.top_threshold") &&
               rank_holds(f, "MNP");
    }
  } catch (const std::out_of_range&) {
    return false;  // missing evidence violates the contract
  }
  return false;
}

// ----------------------------------------------------------------- detectors

namespace {

struct FindingBuilder {
  Finding f;

  FindingBuilder(DefectKind kind, const model::ModuleEntity& mod, const std::string& entity) {
    f.kind = kind;
    f.project = mod.project->name;
    f.entity = entity;
    f.is_test = mod.is_test;
  }

  void metric(const std::string& key, long v) { f.evidence[key] = v; }
  void gate(const std::string& key, bool v) { f.gates[key] = v; }

  // Returns the verdict while recording the fence that confirms it.
  bool outlier(const std::string& key, long v, const metrics::MetricDistribution& d,
               double factor, const metrics::FilterConfig& cfg) {
    f.evidence[key] = v;
    f.thresholds[key + ".fence"] = metrics::outlier_fence(d, factor, cfg);
    f.thresholds[key + ".base"] = metrics::fence_base_value(d, cfg);
    return metrics::is_outlier(v, d, factor, cfg);
  }

  bool rank(const std::string& key, long v, const metrics::MetricDistribution& d, int pct) {
    f.evidence[key] = v;
    f.thresholds[key + ".top_threshold"] = static_cast<double>(metrics::top_threshold(d, pct));
    f.thresholds[key + ".top_pct"] = pct;
    return metrics::top_x_percent(v, d, pct);
  }
};

bool envy_ald_gate(long ald, const DetectorThresholds& th) {
  return th.envy_ald_inverted ? ald < th.ald_min : ald > th.ald_min;
}

class FeatureEnvyDetector : public Detector {
 public:
  DefectKind kind() const override { return DefectKind::FeatureEnvy; }

  void mark_candidates(const model::Project& project, const metrics::ProjectMetrics& pm,
                       const DetectionConfig& cfg, std::vector<Candidate>& out) const override {
    for (const auto& s : project.subroutines) {
      const auto& m = pm.subroutine_metrics.at(&s);
      if (m.aid > cfg.thresholds.aid_min && envy_ald_gate(m.ald, cfg.thresholds) &&
          m.nrc < cfg.thresholds.nrc_max)
        out.push_back(Candidate{kind(), &s, nullptr});
    }
  }

  std::optional<Finding> confirm(const Candidate& cand, const metrics::ProjectMetrics& pm,
                                 const DetectionConfig& cfg) const override {
    const auto& m = pm.subroutine_metrics.at(cand.sub);
    FindingBuilder b(kind(), *cand.sub->module, cand.sub->entity_path());
    b.metric("ALD", m.ald);
    b.metric("NRC", m.nrc);
    b.f.thresholds["AID.gt"] = cfg.thresholds.aid_min;
    if (cfg.thresholds.envy_ald_inverted) b.f.thresholds["ALD.lt"] = cfg.thresholds.ald_min;
    else b.f.thresholds["ALD.gt"] = cfg.thresholds.ald_min;
    b.f.thresholds["NRC.lt"] = cfg.thresholds.nrc_max;
    bool top = b.rank("AID", m.aid, pm.dist(MetricId::AID), cfg.thresholds.envy_top_pct);
    if (!top) return std::nullopt;
    return b.f;
  }
};

class DataClassDetector : public Detector {
 public:
  DefectKind kind() const override { return DefectKind::DataClass; }

  void mark_candidates(const model::Project& project, const metrics::ProjectMetrics&,
                       const DetectionConfig&, std::vector<Candidate>& out) const override {
    for (const auto& c : project.classes) out.push_back(Candidate{kind(), nullptr, &c});
  }

  std::optional<Finding> confirm(const Candidate& cand, const metrics::ProjectMetrics& pm,
                                 const DetectionConfig& cfg) const override {
    const auto& m = pm.class_metrics.at(cand.cls);
    FindingBuilder b(kind(), *cand.cls->module, cand.cls->entity_path());
    bool pub = b.outlier("AOPuF", m.aopuf, pm.dist(MetricId::AOPuF),
                         cfg.filters.extreme_factor, cfg.filters);
    bool acc = b.outlier("AOA", m.aoa, pm.dist(MetricId::AOA), cfg.filters.extreme_factor,
                         cfg.filters);
    if (!pub && !acc) return std::nullopt;
    return b.f;
  }
};

class LongMethodDetector : public Detector {
 public:
  DefectKind kind() const override { return DefectKind::LongMethod; }

  void mark_candidates(const model::Project& project, const metrics::ProjectMetrics&,
                       const DetectionConfig&, std::vector<Candidate>& out) const override {
    for (const auto& s : project.subroutines) out.push_back(Candidate{kind(), &s, nullptr});
  }

  std::optional<Finding> confirm(const Candidate& cand, const metrics::ProjectMetrics& pm,
                                 const DetectionConfig& cfg) const override {
    const auto& m = pm.subroutine_metrics.at(cand.sub);
    FindingBuilder b(kind(), *cand.sub->module, cand.sub->entity_path());
    if (!b.outlier("LOC_method", m.loc, pm.dist(MetricId::LOC_method),
                   cfg.filters.extreme_factor, cfg.filters))
      return std::nullopt;
    return b.f;
  }
};

class LongParameterListDetector : public Detector {
 public:
  DefectKind kind() const override { return DefectKind::LongParameterList; }

  void mark_candidates(const model::Project& project, const metrics::ProjectMetrics&,
                       const DetectionConfig&, std::vector<Candidate>& out) const override {
    for (const auto& s : project.subroutines) out.push_back(Candidate{kind(), &s, nullptr});
  }

  std::optional<Finding> confirm(const Candidate& cand, const metrics::ProjectMetrics& pm,
                                 const DetectionConfig& cfg) const override {
    const auto& m = pm.subroutine_metrics.at(cand.sub);
    FindingBuilder b(kind(), *cand.sub->module, cand.sub->entity_path());
    if (!b.outlier("NOP", m.nop, pm.dist(MetricId::NOP), cfg.filters.extreme_factor,
                   cfg.filters))
      return std::nullopt;
    return b.f;
  }
};

class LargeClassDetector : public Detector {
 public:
  DefectKind kind() const override { return DefectKind::LargeClass; }

  void mark_candidates(const model::Project& project, const metrics::ProjectMetrics&,
                       const DetectionConfig&, std::vector<Candidate>& out) const override {
    for (const auto& c : project.classes) out.push_back(Candidate{kind(), nullptr, &c});
  }

  std::optional<Finding> confirm(const Candidate& cand, const metrics::ProjectMetrics& pm,
                                 const DetectionConfig& cfg) const override {
    const auto& m = pm.class_metrics.at(cand.cls);
    FindingBuilder b(kind(), *cand.cls->module, cand.cls->entity_path());
    b.metric("NMD", m.nmd);
    b.metric("NAD", m.nad);
    if (!b.outlier("NMD_plus_NAD", m.nmd_plus_nad(), pm.nmd_plus_nad,
                   cfg.filters.extreme_factor, cfg.filters))
      return std::nullopt;
    return b.f;
  }
};

bool class_is_controller(const model::ClassEntity& c, const NameLexicon& lex) {
  if (is_controller_name(c.name, lex)) return true;
  for (const auto* m : c.methods)
    if (is_controller_name(m->name, lex)) return true;
  return false;
}

class GodClassDetector : public Detector {
 public:
  DefectKind kind() const override { return DefectKind::GodClass; }

  void mark_candidates(const model::Project& project, const metrics::ProjectMetrics&,
                       const DetectionConfig& cfg, std::vector<Candidate>& out) const override {
    for (const auto& c : project.classes)
      if (class_is_controller(c, cfg.lexicon)) out.push_back(Candidate{kind(), nullptr, &c});
  }

  std::optional<Finding> confirm(const Candidate& cand, const metrics::ProjectMetrics& pm,
                                 const DetectionConfig& cfg) const override {
    const auto& m = pm.class_metrics.at(cand.cls);
    FindingBuilder b(kind(), *cand.cls->module, cand.cls->entity_path());
    b.gate("IsController", true);
    bool loc_mild = b.outlier("LOC_class", m.loc, pm.dist(MetricId::LOC_class),
                              cfg.filters.mild_factor, cfg.filters);
    bool lcom_mild = b.outlier("LCOM", m.lcom, pm.dist(MetricId::LCOM),
                               cfg.filters.mild_factor, cfg.filters);
    long rdc = 0;
    const auto& aoa_dist = pm.dist(MetricId::AOA);
    for (const auto* rc : cand.cls->referenced_classes) {
      auto it = pm.class_metrics.find(rc);
      if (it != pm.class_metrics.end() &&
          metrics::top_x_percent(it->second.aoa, aoa_dist, cfg.thresholds.data_top_pct))
        ++rdc;
    }
    b.metric("RDC", rdc);
    b.f.thresholds["RDC.gt"] = cfg.thresholds.rdc_min;
    b.f.thresholds["RDC.AOA_top_pct"] = cfg.thresholds.data_top_pct;
    if (!(loc_mild && lcom_mild && rdc > cfg.thresholds.rdc_min)) return std::nullopt;
    return b.f;
  }
};

class SwissArmyKnifeDetector : public Detector {
 public:
  DefectKind kind() const override { return DefectKind::SwissArmyKnife; }

  void mark_candidates(const model::Project& project, const metrics::ProjectMetrics&,
                       const DetectionConfig&, std::vector<Candidate>& out) const override {
    for (const auto& c : project.classes) out.push_back(Candidate{kind(), nullptr, &c});
  }

  std::optional<Finding> confirm(const Candidate& cand, const metrics::ProjectMetrics& pm,
                                 const DetectionConfig& cfg) const override {
    const auto& m = pm.class_metrics.at(cand.cls);
    FindingBuilder b(kind(), *cand.cls->module, cand.cls->entity_path());
    if (!b.outlier("SUP", m.sup, pm.dist(MetricId::SUP), cfg.filters.extreme_factor,
                   cfg.filters))
      return std::nullopt;
    return b.f;
  }
};

class FunctionalDecompositionDetector : public Detector {
 public:
  DefectKind kind() const override { return DefectKind::FunctionalDecomposition; }

  void mark_candidates(const model::Project& project, const metrics::ProjectMetrics& pm,
                       const DetectionConfig& cfg, std::vector<Candidate>& out) const override {
    for (const auto& c : project.classes) {
      const auto& m = pm.class_metrics.at(&c);
      if (m.sup == 0 && is_procedural_name(c.name, cfg.lexicon))
        out.push_back(Candidate{kind(), nullptr, &c});
    }
  }

  std::optional<Finding> confirm(const Candidate& cand, const metrics::ProjectMetrics& pm,
                                 const DetectionConfig& cfg) const override {
    const auto& m = pm.class_metrics.at(cand.cls);
    FindingBuilder b(kind(), *cand.cls->module, cand.cls->entity_path());
    b.gate("HasProceduralName", true);
    b.metric("SUP", m.sup);
    b.f.thresholds["SUP.eq"] = 0;
    long rcompf = 0;
    const auto& aoprf_dist = pm.dist(MetricId::AOPrF);
    for (const auto* rc : cand.cls->referenced_classes) {
      auto it = pm.class_metrics.find(rc);
      if (it == pm.class_metrics.end()) continue;
      bool one_method = rc->methods.size() == 1;
      if (one_method && metrics::is_mild_outlier(it->second.aoprf, aoprf_dist, cfg.filters))
        ++rcompf;
    }
    b.metric("RCOMPF", rcompf);
    b.f.thresholds["RCOMPF.gt"] = cfg.thresholds.rcompf_min;
    if (rcompf <= cfg.thresholds.rcompf_min) return std::nullopt;
    return b.f;
  }
};

class SpaghettiCodeDetector : public Detector {
 public:
  DefectKind kind() const override { return DefectKind::SpaghettiCode; }

  void mark_candidates(const model::Project& project, const metrics::ProjectMetrics& pm,
                       const DetectionConfig& cfg, std::vector<Candidate>& out) const override {
    for (const auto& c : project.classes) {
      const auto& m = pm.class_metrics.at(&c);
      if (m.sup == 0 && c.uses_global && is_procedural_name(c.name, cfg.lexicon))
        out.push_back(Candidate{kind(), nullptr, &c});
    }
  }

  std::optional<Finding> confirm(const Candidate& cand, const metrics::ProjectMetrics& pm,
                                 const DetectionConfig& cfg) const override {
    const auto& m = pm.class_metrics.at(cand.cls);
    FindingBuilder b(kind(), *cand.cls->module, cand.cls->entity_path());
    b.gate("HasProceduralName", true);
    b.gate("UsesGlobals", true);
    b.metric("SUP", m.sup);
    b.f.thresholds["SUP.eq"] = 0;

    const auto& loc_dist = pm.dist(MetricId::LOC_method);
    long max_method_loc = 0;
    bool has_long = false;
    for (const auto* mth : cand.cls->methods) {
      long loc = pm.subroutine_metrics.at(mth).loc;
      max_method_loc = std::max(max_method_loc, loc);
      if (metrics::top_x_percent(loc, loc_dist, cfg.thresholds.long_top_pct)) has_long = true;
    }
    b.gate("HasLongMethod", has_long);
    b.metric("max_method_LOC", max_method_loc);
    b.f.thresholds["method_LOC.top_threshold"] =
        static_cast<double>(metrics::top_threshold(loc_dist, cfg.thresholds.long_top_pct));
    bool mnp_top = b.rank("MNP", m.mnp, pm.dist(MetricId::MNP), cfg.thresholds.long_top_pct);
    if (!(has_long && mnp_top)) return std::nullopt;
    return b.f;
  }
};

}  // namespace

DetectorRegistry DetectorRegistry::standard() {
  DetectorRegistry reg;
  reg.add(std::make_unique<FeatureEnvyDetector>());
  reg.add(std::make_unique<DataClassDetector>());
  reg.add(std::make_unique<LongMethodDetector>());
  reg.add(std::make_unique<LongParameterListDetector>());
  reg.add(std::make_unique<LargeClassDetector>());
  reg.add(std::make_unique<GodClassDetector>());
  reg.add(std::make_unique<SwissArmyKnifeDetector>());
  reg.add(std::make_unique<FunctionalDecompositionDetector>());
  reg.add(std::make_unique<SpaghettiCodeDetector>());
  return reg;
}

void DetectorRegistry::add(std::unique_ptr<Detector> d) { detectors_.push_back(std::move(d)); }

std::vector<Finding> DetectorRegistry::run(const model::Project& project,
                                           const metrics::ProjectMetrics& pm,
                                           const DetectionConfig& cfg) const {
  std::vector<Finding> findings;
  if (!pm.finalized) throw std::logic_error("distributions not finalized");
  // Phase one: observable candidate marking.
  std::vector<Candidate> candidates;
  for (const auto& d : detectors_) d->mark_candidates(project, pm, cfg, candidates);
  // Phase two: statistical confirmation against the finalized distributions.
  for (const auto& cand : candidates) {
    for (const auto& d : detectors_) {
      if (d->kind() != cand.kind) continue;
      if (auto f = d->confirm(cand, pm, cfg)) findings.push_back(std::move(*f));
      break;
    }
  }
  std::sort(findings.begin(), findings.end());
  for (const auto& f : findings) {
    if (!audit_finding(f))
      throw std::logic_error(std::string("gate soundness violated for ") + defect_id(f.kind) +
                             " at " + f.entity);
  }
  return findings;
}

std::vector<Finding> run_detection(const model::Project& project,
                                   const metrics::ProjectMetrics& pm,
                                   const DetectionConfig& cfg) {
  return DetectorRegistry::standard().run(project, pm, cfg);
}

}  // namespace dscan::detect
