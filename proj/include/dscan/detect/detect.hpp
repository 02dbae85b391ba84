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

#ifndef DSCAN_DETECT_DETECT_HPP
#define DSCAN_DETECT_DETECT_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dscan/metrics/metrics.hpp"
#include "dscan/model/entities.hpp"

namespace dscan::detect {

enum class DefectKind : uint8_t {
  FeatureEnvy, DataClass, LongMethod, LongParameterList, LargeClass,
  GodClass, SwissArmyKnife, FunctionalDecomposition, SpaghettiCode,
};

inline constexpr int kDefectKindCount = 9;

const char* defect_name(DefectKind k);  // display name, e.g. "Feature Envy"
const char* defect_id(DefectKind k);    // stable id, e.g. "feature_envy"
std::optional<DefectKind> defect_from_id(const std::string& id);
bool is_smell(DefectKind k);  // the five smells; the other four are antipatterns

struct NameLexicon {
  std::vector<std::string> controller_words;
  std::vector<std::string> procedural_words;
  static NameLexicon defaults();
};

/// Case-insensitive substring match against a word list.
bool name_contains_word(const std::string& name, const std::vector<std::string>& words);
bool is_controller_name(const std::string& name, const NameLexicon& lexicon);
bool is_procedural_name(const std::string& name, const NameLexicon& lexicon);

/// A method whose main purpose is reading or writing one field: get/set
/// naming, property/setter decorators, or a single-statement body returning
/// an own field or assigning a parameter to one.
bool is_accessor(const model::SubroutineEntity& s);

struct DetectorThresholds {
  int aid_min = 4;
  int ald_min = 3;
  int nrc_max = 3;
  int envy_top_pct = 10;
  int rdc_min = 2;
  int rcompf_min = 2;
  int data_top_pct = 15;  // AOA rank threshold for RDC
  int long_top_pct = 15;  // LOC and MNP rank thresholds
  bool envy_ald_inverted = false;  // flips ALD > min to ALD < min
};

struct DetectionConfig {
  DetectorThresholds thresholds;
  NameLexicon lexicon = NameLexicon::defaults();
  metrics::FilterConfig filters;
};

struct Finding {
  std::string project;
  std::string entity;  // module path :: qualified name
  DefectKind kind = DefectKind::FeatureEnvy;
  bool is_test = false;
  std::map<std::string, long> evidence;       // every metric of the formula
  std::map<std::string, double> thresholds;   // fences and rank thresholds
  std::map<std::string, bool> gates;          // named boolean predicates

  bool operator<(const Finding& o) const;
};

/// Re-evaluates a finding's formula from its recorded evidence and
/// thresholds alone. Zero tolerance: run_detection asserts this on every
/// emitted finding.
bool audit_finding(const Finding& f);

struct Candidate {
  DefectKind kind = DefectKind::FeatureEnvy;
  const model::SubroutineEntity* sub = nullptr;
  const model::ClassEntity* cls = nullptr;
};

/// One detector per defect kind: phase one marks candidates from observable
/// properties, phase two confirms them against the finalized per-project
/// distributions.
class Detector {
 public:
  virtual ~Detector() = default;
  virtual DefectKind kind() const = 0;
  virtual void mark_candidates(const model::Project& project,
                               const metrics::ProjectMetrics& pm,
                               const DetectionConfig& cfg,
                               std::vector<Candidate>& out) const = 0;
  virtual std::optional<Finding> confirm(const Candidate& cand,
                                         const metrics::ProjectMetrics& pm,
                                         const DetectionConfig& cfg) const = 0;
};

class DetectorRegistry {
 public:
  static DetectorRegistry standard();
  void add(std::unique_ptr<Detector> d);
  /// Runs both phases for one project; output sorted by (project, entity,
  /// kind) and audited.
  std::vector<Finding> run(const model::Project& project, const metrics::ProjectMetrics& pm,
                           const DetectionConfig& cfg) const;

 private:
  std::vector<std::unique_ptr<Detector>> detectors_;
};

/// Convenience wrapper: standard registry over one project.
std::vector<Finding> run_detection(const model::Project& project,
                                   const metrics::ProjectMetrics& pm,
                                   const DetectionConfig& cfg);

}  // namespace dscan::detect

#endif  // DSCAN_DETECT_DETECT_HPP
