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

#ifndef E2E_BENCH_STATS_H_
#define E2E_BENCH_STATS_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace e2e_bench {

struct MetricPoint {
  std::string record_id;
  double value = 0.0;

  bool operator==(const MetricPoint&) const = default;
};

// Per-record scores of one metric over one run, in record order.
// Record ids are unique and every value is finite.
class MetricSeries {
 public:
  MetricSeries() = default;
  // Throws DomainError on duplicate ids or non-finite values.
  MetricSeries(std::string name, std::string variant, std::vector<MetricPoint> points);

  const std::string& name() const { return name_; }
  const std::string& variant() const { return variant_; }
  const std::vector<MetricPoint>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  std::vector<double> values() const;
  std::vector<std::string> ids() const;

 private:
  std::string name_;
  std::string variant_;
  std::vector<MetricPoint> points_;
};

struct Histogram {
  // counts.size() + 1 edges; the last bin is closed on the right.
  std::vector<double> edges;
  std::vector<std::size_t> counts;
};

struct SeriesSummary {
  double mean = 0.0;
  // Population standard deviation.
  double std = 0.0;
  double min = 0.0;
  double max = 0.0;
  std::size_t count = 0;
  Histogram histogram;
};

// Equal-width histogram over [min, max]. When min == max all points fall in
// a single bin regardless of `bins`. Throws DomainError on an empty series
// or bins < 1.
SeriesSummary Summarize(const MetricSeries& series, int bins = 10);

double Mean(std::span<const double> values);

// Pearson correlation of two equally long samples. Throws DomainError for
// fewer than 3 points or a constant sample.
double PearsonCorrelation(std::span<const double> a, std::span<const double> b);

struct AlignedPairs {
  std::vector<std::string> ids;  // in the order of the first series
  std::vector<double> a;
  std::vector<double> b;
  // Ids present in only one series; non-empty only with allow_partial.
  std::vector<std::string> dropped;
};

// Joins two series on record id. Unless allow_partial is set, any id in only
// one series raises InputError listing the symmetric difference.
AlignedPairs JoinById(const MetricSeries& a, const MetricSeries& b,
                      bool allow_partial = false);

// Squared Pearson correlation of the id-aligned values.
double RSquared(const MetricSeries& a, const MetricSeries& b,
                bool allow_partial = false);

struct MeanDelta {
  double delta_mean = 0.0;
  // b - a per record, in a's record order.
  MetricSeries per_record;
};

// Throws InputError when the id sets differ.
MeanDelta ComputeMeanDelta(const MetricSeries& a, const MetricSeries& b);

}  // namespace e2e_bench

#endif  // E2E_BENCH_STATS_H_
