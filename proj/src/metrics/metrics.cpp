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

#include "dscan/metrics/metrics.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace dscan::metrics {

const char* metric_name(MetricId id) {
  switch (id) {
    case MetricId::LOC_method: return "LOC_method";
    case MetricId::LOC_class: return "LOC_class";
    case MetricId::NOP: return "NOP";
    case MetricId::AID: return "AID";
    case MetricId::ALD: return "ALD";
    case MetricId::NRC: return "NRC";
    case MetricId::AOPuF: return "AOPuF";
    case MetricId::AOPrF: return "AOPrF";
    case MetricId::AOA: return "AOA";
    case MetricId::NMD: return "NMD";
    case MetricId::NAD: return "NAD";
    case MetricId::LCOM: return "LCOM";
    case MetricId::SUP: return "SUP";
    case MetricId::MNP: return "MNP";
  }
  return "?";
}

namespace {
double median_of_range(const std::vector<long>& v, size_t first, size_t last) {
  size_t n = last - first;
  size_t mid = first + n / 2;
  if (n % 2 == 1) return static_cast<double>(v[mid]);
  return (static_cast<double>(v[mid - 1]) + static_cast<double>(v[mid])) / 2.0;
}
}  // namespace

void quartiles(const std::vector<long>& v, double& q1, double& median, double& q3) {
  if (v.empty()) throw std::invalid_argument("quartiles of an empty population");
  size_t n = v.size();
  median = median_of_range(v, 0, n);
  if (n == 1) {
    q1 = q3 = median;
    return;
  }
  size_t half = n / 2;
  q1 = median_of_range(v, 0, half);
  q3 = median_of_range(v, n - half, n);  // excludes the middle value for odd n
}

MetricDistribution::MetricDistribution(std::vector<long> values) : values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("empty metric distribution");
  std::sort(values_.begin(), values_.end());
  quartiles(values_, q1_, median_, q3_);
}

double fence_base_value(const MetricDistribution& d, const FilterConfig& cfg) {
  return cfg.fence_base == FilterConfig::FenceBase::Median ? d.median() : d.q3();
}

double outlier_fence(const MetricDistribution& d, double factor, const FilterConfig& cfg) {
  return fence_base_value(d, cfg) + factor * d.iqr();
}

bool is_outlier(long v, const MetricDistribution& d, double factor, const FilterConfig& cfg) {
  double base = fence_base_value(d, cfg);
  double value = static_cast<double>(v);
  return value > base && value >= base + factor * d.iqr();
}

bool is_mild_outlier(long v, const MetricDistribution& d, const FilterConfig& cfg) {
  return is_outlier(v, d, cfg.mild_factor, cfg);
}

bool is_extreme_outlier(long v, const MetricDistribution& d, const FilterConfig& cfg) {
  return is_outlier(v, d, cfg.extreme_factor, cfg);
}

long top_threshold(const MetricDistribution& d, int x_percent) {
  if (d.empty()) throw std::invalid_argument("top_threshold of an empty population");
  if (x_percent <= 0 || x_percent > 100) throw std::invalid_argument("x_percent out of range");
  size_t n = d.size();
  size_t k = (n * static_cast<size_t>(x_percent) + 99) / 100;  // ceil(n*x/100)
  return d.values()[n - k];
}

bool top_x_percent(long v, const MetricDistribution& d, int x_percent) {
  return v >= top_threshold(d, x_percent);
}

// ------------------------------------------------------------ entity metrics

SubroutineMetrics compute_subroutine_metrics(const model::SubroutineEntity& s) {
  SubroutineMetrics m;
  m.loc = s.module->parsed ? s.module->parsed->effective_loc(s.span_first, s.span_last) : 0;
  m.nop = s.nop();
  m.aid = static_cast<long>(s.foreign_fields.size());
  m.ald = static_cast<long>(s.own_field_names.size());
  std::set<const model::ClassEntity*> owners;
  for (const auto& [owner, name] : s.foreign_fields) owners.insert(owner);
  m.nrc = static_cast<long>(owners.size());
  return m;
}

long lcom(const model::ClassEntity& c) {
  long p = 0, q = 0;
  const auto& methods = c.methods;
  for (size_t i = 0; i < methods.size(); ++i) {
    for (size_t j = i + 1; j < methods.size(); ++j) {
      const auto& a = methods[i]->own_field_names;
      const auto& b = methods[j]->own_field_names;
      bool share = false;
      for (const auto& name : a) {
        if (b.count(name)) {
          share = true;
          break;
        }
      }
      if (share) ++q;
      else ++p;
    }
  }
  return std::max(0L, p - q);
}

ClassMetrics compute_class_metrics(const model::ClassEntity& c,
                                   const AccessorPredicate& is_accessor) {
  ClassMetrics m;
  m.loc = c.module->parsed ? c.module->parsed->effective_loc(c.span_first, c.span_last) : 0;
  for (auto* mth : c.methods) {
    if (mth->is_concrete) ++m.nmd;
    if (mth->nop() == 0) ++m.mnp;
    if (is_accessor && is_accessor(*mth)) ++m.aoa;
  }
  std::set<std::string> attribute_names;
  for (const auto& f : c.fields) {
    attribute_names.insert(f.name);
    if (f.visibility == model::Visibility::Public) ++m.aopuf;
    else ++m.aoprf;
  }
  for (auto* mth : c.methods)
    if (mth->has_decorator("property")) attribute_names.insert(mth->name);
  m.nad = static_cast<long>(attribute_names.size());
  for (const auto& base : c.base_texts)
    if (base != "object") ++m.sup;
  m.lcom = lcom(c);
  return m;
}

const MetricDistribution& ProjectMetrics::dist(MetricId id) const {
  auto it = distributions.find(id);
  if (it == distributions.end())
    throw std::invalid_argument(std::string("no distribution for ") + metric_name(id));
  return it->second;
}

ProjectMetrics compute_project_metrics(const model::Project& project,
                                       const AccessorPredicate& is_accessor) {
  ProjectMetrics pm;
  for (const auto& s : project.subroutines)
    pm.subroutine_metrics.emplace(&s, compute_subroutine_metrics(s));
  for (const auto& c : project.classes)
    pm.class_metrics.emplace(&c, compute_class_metrics(c, is_accessor));

  auto add_dist = [&](MetricId id, std::vector<long> vals) {
    if (!vals.empty()) pm.distributions.emplace(id, MetricDistribution(std::move(vals)));
  };
  std::vector<long> loc_m, nop, aid, ald, nrc;
  for (const auto& [s, m] : pm.subroutine_metrics) {
    loc_m.push_back(m.loc);
    nop.push_back(m.nop);
    aid.push_back(m.aid);
    ald.push_back(m.ald);
    nrc.push_back(m.nrc);
  }
  add_dist(MetricId::LOC_method, std::move(loc_m));
  add_dist(MetricId::NOP, std::move(nop));
  add_dist(MetricId::AID, std::move(aid));
  add_dist(MetricId::ALD, std::move(ald));
  add_dist(MetricId::NRC, std::move(nrc));

  std::vector<long> loc_c, nmd, nad, aopuf, aoprf, aoa, lcom_v, sup, mnp, sum;
  for (const auto& [c, m] : pm.class_metrics) {
    loc_c.push_back(m.loc);
    nmd.push_back(m.nmd);
    nad.push_back(m.nad);
    aopuf.push_back(m.aopuf);
    aoprf.push_back(m.aoprf);
    aoa.push_back(m.aoa);
    lcom_v.push_back(m.lcom);
    sup.push_back(m.sup);
    mnp.push_back(m.mnp);
    sum.push_back(m.nmd_plus_nad());
  }
  add_dist(MetricId::LOC_class, std::move(loc_c));
  add_dist(MetricId::NMD, std::move(nmd));
  add_dist(MetricId::NAD, std::move(nad));
  add_dist(MetricId::AOPuF, std::move(aopuf));
  add_dist(MetricId::AOPrF, std::move(aoprf));
  add_dist(MetricId::AOA, std::move(aoa));
  add_dist(MetricId::LCOM, std::move(lcom_v));
  add_dist(MetricId::SUP, std::move(sup));
  add_dist(MetricId::MNP, std::move(mnp));
  if (!sum.empty()) pm.nmd_plus_nad = MetricDistribution(std::move(sum));
  pm.finalized = true;
  return pm;
}

}  // namespace dscan::metrics
