// Copyright 2026 The E2E Bench Authors.
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

#include "e2e_bench/stats.h"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "e2e_bench/errors.h"

namespace e2e_bench {
namespace {

std::string JoinIds(const std::vector<std::string>& ids, std::size_t limit = 10) {
  std::string out;
  for (std::size_t i = 0; i < ids.size() && i < limit; ++i) {
    if (i > 0) out += ", ";
    out += ids[i];
  }
  if (ids.size() > limit) out += ", ... (" + std::to_string(ids.size()) + " total)";
  return out;
}

}  // namespace

MetricSeries::MetricSeries(std::string name, std::string variant,
                           std::vector<MetricPoint> points)
    : name_(std::move(name)), variant_(std::move(variant)), points_(std::move(points)) {
  std::unordered_set<std::string> seen;
  for (const auto& point : points_) {
    if (!seen.insert(point.record_id).second) {
      throw DomainError("series '" + name_ + "' has duplicate record id '" +
                        point.record_id + "'");
    }
    if (!std::isfinite(point.value)) {
      throw DomainError("series '" + name_ + "' has a non-finite value for '" +
                        point.record_id + "'");
    }
  }
}

std::vector<double> MetricSeries::values() const {
  std::vector<double> out;
  out.reserve(points_.size());
  for (const auto& point : points_) out.push_back(point.value);
  return out;
}

std::vector<std::string> MetricSeries::ids() const {
  std::vector<std::string> out;
  out.reserve(points_.size());
  for (const auto& point : points_) out.push_back(point.record_id);
  return out;
}

double Mean(std::span<const double> values) {
  if (values.empty()) throw DomainError("mean of an empty sample");
  // Neumaier summation.
  double sum = 0.0;
  double compensation = 0.0;
  for (double v : values) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      compensation += (sum - t) + v;
    } else {
      compensation += (v - t) + sum;
    }
    sum = t;
  }
  return (sum + compensation) / static_cast<double>(values.size());
}

SeriesSummary Summarize(const MetricSeries& series, int bins) {
  if (series.empty()) throw DomainError("cannot summarize empty series '" + series.name() + "'");
  if (bins < 1) throw DomainError("histogram needs at least one bin");

  const auto values = series.values();
  SeriesSummary summary;
  summary.count = values.size();
  summary.mean = Mean(values);
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  summary.min = *lo;
  summary.max = *hi;
  // Rounding can push the computed mean a hair outside the extrema.
  summary.mean = std::clamp(summary.mean, summary.min, summary.max);

  double squares = 0.0;
  for (double v : values) squares += (v - summary.mean) * (v - summary.mean);
  summary.std = std::sqrt(squares / static_cast<double>(values.size()));

  Histogram& hist = summary.histogram;
  if (summary.min == summary.max) {
    hist.edges = {summary.min, summary.max};
    hist.counts = {values.size()};
    return summary;
  }
  const double width = (summary.max - summary.min) / bins;
  hist.edges.resize(static_cast<std::size_t>(bins) + 1);
  for (int i = 0; i < bins; ++i) hist.edges[i] = summary.min + i * width;
  hist.edges[bins] = summary.max;
  hist.counts.assign(static_cast<std::size_t>(bins), 0);
  for (double v : values) {
    auto index = static_cast<std::ptrdiff_t>(std::floor((v - summary.min) / width));
    index = std::clamp<std::ptrdiff_t>(index, 0, bins - 1);
    ++hist.counts[static_cast<std::size_t>(index)];
  }
  return summary;
}

double PearsonCorrelation(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DomainError("correlation of samples with different sizes");
  if (a.size() < 3) {
    throw DomainError("correlation needs at least 3 points, got " + std::to_string(a.size()));
  }
  const double mean_a = Mean(a);
  const double mean_b = Mean(b);
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - mean_a;
    const double db = b[i] - mean_b;
    sxy += da * db;
    sxx += da * da;
    syy += db * db;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw DomainError("correlation is undefined for a constant series");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

AlignedPairs JoinById(const MetricSeries& a, const MetricSeries& b, bool allow_partial) {
  std::unordered_map<std::string, double> b_values;
  for (const auto& point : b.points()) b_values.emplace(point.record_id, point.value);

  AlignedPairs pairs;
  std::unordered_set<std::string> matched;
  for (const auto& point : a.points()) {
    auto it = b_values.find(point.record_id);
    if (it == b_values.end()) {
      pairs.dropped.push_back(point.record_id);
      continue;
    }
    matched.insert(point.record_id);
    pairs.ids.push_back(point.record_id);
    pairs.a.push_back(point.value);
    pairs.b.push_back(it->second);
  }
  for (const auto& point : b.points()) {
    if (!matched.contains(point.record_id)) pairs.dropped.push_back(point.record_id);
  }
  if (!pairs.dropped.empty() && !allow_partial) {
    throw InputError("record ids differ between '" + a.name() + "' and '" + b.name() +
                     "': " + JoinIds(pairs.dropped));
  }
  return pairs;
}

double RSquared(const MetricSeries& a, const MetricSeries& b, bool allow_partial) {
  const auto pairs = JoinById(a, b, allow_partial);
  const double r = PearsonCorrelation(pairs.a, pairs.b);
  return std::clamp(r * r, 0.0, 1.0);
}

MeanDelta ComputeMeanDelta(const MetricSeries& a, const MetricSeries& b) {
  const auto pairs = JoinById(a, b, false);
  if (pairs.ids.empty()) throw DomainError("mean delta of empty series");
  std::vector<MetricPoint> deltas;
  deltas.reserve(pairs.ids.size());
  for (std::size_t i = 0; i < pairs.ids.size(); ++i) {
    deltas.push_back({pairs.ids[i], pairs.b[i] - pairs.a[i]});
  }
  MeanDelta result;
  result.delta_mean = Mean(pairs.b) - Mean(pairs.a);
  result.per_record = MetricSeries(b.name(), b.variant(), std::move(deltas));
  return result;
}

}  // namespace e2e_bench
