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

#ifndef DSCAN_METRICS_METRICS_HPP
#define DSCAN_METRICS_METRICS_HPP

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "dscan/model/entities.hpp"

namespace dscan::metrics {

enum class MetricId : uint8_t {
  LOC_method, LOC_class, NOP, AID, ALD, NRC,
  AOPuF, AOPrF, AOA, NMD, NAD, LCOM, SUP, MNP,
};

const char* metric_name(MetricId id);

/// Sorted per-project population of one integer metric, with Tukey hinges.
class MetricDistribution {
 public:
  /// Values need not be pre-sorted. Throws std::invalid_argument when empty.
  explicit MetricDistribution(std::vector<long> values);
  MetricDistribution() = default;

  bool empty() const { return values_.empty(); }
  size_t size() const { return values_.size(); }
  const std::vector<long>& values() const { return values_; }
  double q1() const { return q1_; }
  double median() const { return median_; }
  double q3() const { return q3_; }
  double iqr() const { return q3_ - q1_; }

 private:
  std::vector<long> values_;
  double q1_ = 0, median_ = 0, q3_ = 0;
};

/// Tukey hinges: median of the lower/upper half, the overall median excluded
/// from both halves for odd n. Throws std::invalid_argument on empty input.
void quartiles(const std::vector<long>& sorted_values, double& q1, double& median, double& q3);

struct FilterConfig {
  enum class FenceBase : uint8_t { Median, Q3 };
  FenceBase fence_base = FenceBase::Median;
  double mild_factor = 1.5;
  double extreme_factor = 3.0;
};

/// Base value the outlier distance is measured from (median as published;
/// q3 as the conventional boxplot alternative).
double fence_base_value(const MetricDistribution& d, const FilterConfig& cfg);
/// Smallest value that qualifies: base + factor * IQR.
double outlier_fence(const MetricDistribution& d, double factor, const FilterConfig& cfg);

/// Upper-side outlier: v is at least `factor` interquartile ranges above the
/// base, with a strict above-base guard so degenerate IQR=0 populations do
/// not flag the whole project.
bool is_outlier(long v, const MetricDistribution& d, double factor, const FilterConfig& cfg);
bool is_mild_outlier(long v, const MetricDistribution& d, const FilterConfig& cfg);
bool is_extreme_outlier(long v, const MetricDistribution& d, const FilterConfig& cfg);

/// Rank threshold for TopXPercent: the k-th largest value, k = ceil(n*x/100).
long top_threshold(const MetricDistribution& d, int x_percent);
/// True iff v ranks in the top X percent (ties at the threshold qualify).
bool top_x_percent(long v, const MetricDistribution& d, int x_percent);

// ------------------------------------------------------------- entity metrics

struct SubroutineMetrics {
  long loc = 0, nop = 0, aid = 0, ald = 0, nrc = 0;
};

struct ClassMetrics {
  long loc = 0, nmd = 0, nad = 0, aopuf = 0, aoprf = 0, aoa = 0, lcom = 0, sup = 0, mnp = 0;
  long nmd_plus_nad() const { return nmd + nad; }
};

using AccessorPredicate = std::function<bool(const model::SubroutineEntity&)>;

SubroutineMetrics compute_subroutine_metrics(const model::SubroutineEntity& s);
ClassMetrics compute_class_metrics(const model::ClassEntity& c, const AccessorPredicate& is_accessor);

/// Chidamber-Kemerer LCOM: over all unordered method pairs, pairs sharing no
/// own field minus pairs sharing at least one, floored at zero.
long lcom(const model::ClassEntity& c);

/// Per-project metric populations plus the per-entity samples they came from.
struct ProjectMetrics {
  std::map<const model::SubroutineEntity*, SubroutineMetrics> subroutine_metrics;
  std::map<const model::ClassEntity*, ClassMetrics> class_metrics;
  std::map<MetricId, MetricDistribution> distributions;
  MetricDistribution nmd_plus_nad;  // Large Class runs on the sum itself
  bool finalized = false;

  const MetricDistribution& dist(MetricId id) const;
};

/// Computes every metric for every entity of a linked project and finalizes
/// the per-project distributions (subroutine metrics pool module-level
/// functions and methods together).
ProjectMetrics compute_project_metrics(const model::Project& project,
                                       const AccessorPredicate& is_accessor);

}  // namespace dscan::metrics

#endif  // DSCAN_METRICS_METRICS_HPP
