// Copyright 2026 The veridecode Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "veridecode/metrics/metrics.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

#include "veridecode/errors.h"

namespace veridecode {

std::vector<Verdict> DedupeVerdicts(std::span<const Verdict> verdicts) {
  std::set<std::pair<Label, std::vector<std::string>>> seen;
  std::vector<Verdict> out;
  for (const Verdict& v : verdicts) {
    if (v.verified() && !seen.emplace(v.label, v.evidence).second) continue;
    out.push_back(v);
  }
  return out;
}

MetricReport ComputeMetrics(std::span<const PrefixVerdicts> all, std::size_t k) {
  if (k < 1) throw ConfigError("evaluation window k must be >= 1");
  if (all.empty()) throw ConfigError("metrics need at least one prefix");
  MetricReport r;
  r.prefixes = all.size();
  double spg = 0, spv = 0, uspg = 0, uspv = 0;
  std::size_t spv_n = 0, uspv_n = 0;
  auto count = [](std::span<const Verdict> vs, Label label) {
    return static_cast<double>(
        std::count_if(vs.begin(), vs.end(), [&](const Verdict& v) { return v.label == label; }));
  };
  const double kd = static_cast<double>(k);
  for (const PrefixVerdicts& p : all) {
    const std::vector<Verdict> unique = DedupeVerdicts(p.verdicts);
    const double s = count(p.verdicts, Label::kSupported);
    const double v = s + count(p.verdicts, Label::kRefuted);
    const double su = count(unique, Label::kSupported);
    const double vu = su + count(unique, Label::kRefuted);
    spg += s / kd;
    uspg += su / kd;
    if (v > 0) {
      spv += s / v;
      ++spv_n;
    } else {
      ++r.spv_skipped;
    }
    if (vu > 0) {
      uspv += su / vu;
      ++uspv_n;
    } else {
      ++r.uspv_skipped;
    }
  }
  const double n = static_cast<double>(all.size());
  r.spg = spg / n;
  r.uspg = uspg / n;
  r.spv = spv_n ? spv / static_cast<double>(spv_n) : 0.0;
  r.uspv = uspv_n ? uspv / static_cast<double>(uspv_n) : 0.0;
  return r;
}

Proportion FourgramProportion(std::span<const double> machine, std::span<const double> human) {
  if (machine.empty() || machine.size() != human.size()) {
    throw InputError("4-gram proportion needs aligned, nonempty count lists");
  }
  Proportion p;
  double sum = 0.0;
  for (std::size_t i = 0; i < machine.size(); ++i) {
    if (!(human[i] > 0.0)) {
      ++p.skipped;
      continue;
    }
    sum += machine[i] / human[i];
    ++p.used;
  }
  p.value = p.used ? sum / static_cast<double>(p.used) : 0.0;
  return p;
}

double Pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InputError("pearson needs equal-length inputs");
  if (x.size() < 2) throw InputError("pearson needs at least two points");
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw UndefinedCorrelationError("correlation is undefined for a zero-variance input");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

MetricReport AverageReports(std::span<const MetricReport> reports) {
  if (reports.empty()) throw InputError("nothing to average");
  MetricReport out;
  std::size_t with_proportion = 0, with_spv = 0, with_uspv = 0;
  double proportion = 0.0;
  for (const MetricReport& r : reports) {
    out.spg += r.spg;
    out.uspg += r.uspg;
    out.distinct_4grams += r.distinct_4grams;
    out.spv_skipped += r.spv_skipped;
    out.uspv_skipped += r.uspv_skipped;
    out.proportion_skipped += r.proportion_skipped;
    out.prefixes = std::max(out.prefixes, r.prefixes);
    // A replicate in which every prefix was skipped has no SPV at all.
    if (r.spv_skipped < r.prefixes || r.prefixes == 0) {
      out.spv += r.spv;
      ++with_spv;
    }
    if (r.uspv_skipped < r.prefixes || r.prefixes == 0) {
      out.uspv += r.uspv;
      ++with_uspv;
    }
    if (r.fourgram_proportion >= 0.0) {
      proportion += r.fourgram_proportion;
      ++with_proportion;
    }
  }
  const double n = static_cast<double>(reports.size());
  out.spg /= n;
  out.uspg /= n;
  out.distinct_4grams /= n;
  if (with_spv) out.spv /= static_cast<double>(with_spv);
  if (with_uspv) out.uspv /= static_cast<double>(with_uspv);
  if (with_proportion) out.fourgram_proportion = proportion / static_cast<double>(with_proportion);
  return out;
}

}  // namespace veridecode
