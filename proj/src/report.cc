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

#include "e2e_bench/report.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iterator>
#include <set>
#include <sstream>

#include "e2e_bench/errors.h"
#include "e2e_bench/util.h"

namespace e2e_bench {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

bool StartsWith(std::string_view text, std::string_view prefix) {
  return text.substr(0, prefix.size()) == prefix;
}

json SummaryToJson(const SeriesSummary& summary) {
  return {{"mean", summary.mean},
          {"std", summary.std},
          {"min", summary.min},
          {"max", summary.max},
          {"count", summary.count},
          {"histogram",
           {{"edges", summary.histogram.edges}, {"counts", summary.histogram.counts}}}};
}

void WriteFile(const fs::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << contents;
  if (!out) throw IoError("write failed for " + path.string());
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

// Scatter file stem for each ROUGE granularity prefix.
constexpr std::pair<std::string_view, std::string_view> kScatterFiles[] = {
    {"rouge1", "rouge1"}, {"rouge2", "rouge2"}, {"rougeLcs", "rougelcs"}};

std::string XmlEscape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

constexpr double kSvgSize = 400.0;
constexpr double kSvgMargin = 40.0;

std::string SvgHeader(std::string_view title) {
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSvgSize << "\" height=\""
      << kSvgSize << "\" font-family=\"sans-serif\" font-size=\"11\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kSvgSize / 2 << "\" y=\"20\" text-anchor=\"middle\">"
      << XmlEscape(title) << "</text>\n";
  const double lo = kSvgMargin;
  const double hi = kSvgSize - kSvgMargin;
  out << "<line x1=\"" << lo << "\" y1=\"" << hi << "\" x2=\"" << hi << "\" y2=\"" << hi
      << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << lo << "\" y1=\"" << lo << "\" x2=\"" << lo << "\" y2=\"" << hi
      << "\" stroke=\"black\"/>\n";
  return out.str();
}

// Precision on x, recall on y, both over [0, 1].
std::string ScatterSvg(std::string_view title, const std::vector<double>& xs,
                       const std::vector<double>& ys) {
  std::ostringstream out;
  out << SvgHeader(title);
  const double span = kSvgSize - 2 * kSvgMargin;
  out << "<text x=\"" << kSvgSize / 2 << "\" y=\"" << kSvgSize - 10
      << "\" text-anchor=\"middle\">precision</text>\n"
      << "<text x=\"12\" y=\"" << kSvgSize / 2 << "\" transform=\"rotate(-90 12 "
      << kSvgSize / 2 << ")\" text-anchor=\"middle\">recall</text>\n";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out << "<circle cx=\"" << kSvgMargin + xs[i] * span << "\" cy=\""
        << kSvgSize - kSvgMargin - ys[i] * span << "\" r=\"3\" fill=\"steelblue\" "
        << "fill-opacity=\"0.6\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string HistogramSvg(std::string_view title, const Histogram& hist) {
  std::ostringstream out;
  out << SvgHeader(title);
  const double span = kSvgSize - 2 * kSvgMargin;
  const std::size_t peak =
      hist.counts.empty() ? 1 : std::max<std::size_t>(1, *std::max_element(hist.counts.begin(), hist.counts.end()));
  const double bar_width = span / static_cast<double>(std::max<std::size_t>(1, hist.counts.size()));
  for (std::size_t i = 0; i < hist.counts.size(); ++i) {
    const double height = span * static_cast<double>(hist.counts[i]) / static_cast<double>(peak);
    out << "<rect x=\"" << kSvgMargin + i * bar_width << "\" y=\""
        << kSvgSize - kSvgMargin - height << "\" width=\"" << bar_width * 0.9
        << "\" height=\"" << height << "\" fill=\"steelblue\"/>\n";
  }
  if (!hist.edges.empty()) {
    out << "<text x=\"" << kSvgMargin << "\" y=\"" << kSvgSize - kSvgMargin + 14 << "\">"
        << FormatDouble(hist.edges.front()) << "</text>\n"
        << "<text x=\"" << kSvgSize - kSvgMargin << "\" y=\"" << kSvgSize - kSvgMargin + 14
        << "\" text-anchor=\"end\">" << FormatDouble(hist.edges.back()) << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace

const MetricSeries* RunResult::Find(const std::string& metric) const {
  for (const auto& s : series) {
    if (s.name() == metric) return &s;
  }
  return nullptr;
}

std::vector<std::string> RunResult::MetricNames() const {
  std::vector<std::string> names;
  names.reserve(series.size());
  for (const auto& s : series) names.push_back(s.name());
  return names;
}

void ValidateRun(const RunResult& run) {
  std::set<std::string> names;
  for (const auto& s : run.series) {
    if (!names.insert(s.name()).second) {
      throw DomainError("run has two series named '" + s.name() + "'");
    }
    if (s.ids() != run.record_ids) {
      throw DomainError("series '" + s.name() + "' does not cover the run's record ids");
    }
  }
}

json RunToJson(const RunResult& run) {
  json summaries = json::object();
  for (const auto& s : run.series) {
    summaries[s.name()] = SummaryToJson(Summarize(s, run.histogram_bins));
  }
  return {{"schema_version", kRunSchemaVersion},
          {"run_id", run.run_id},
          {"variant", run.eval_set.variant},
          {"eval_set",
           {{"source_path", run.eval_set.source_path},
            {"created", run.eval_set.created},
            {"variant", run.eval_set.variant},
            {"record_count", run.record_ids.size()}}},
          {"record_ids", run.record_ids},
          {"metrics", run.MetricNames()},
          {"histogram_bins", run.histogram_bins},
          {"summaries", summaries},
          {"degenerate_records", run.degenerate_records},
          {"provenance", run.provenance}};
}

void WriteScoresCsv(const RunResult& run, std::ostream& out) {
  std::vector<std::string> header{"id"};
  for (const auto& s : run.series) header.push_back(s.name());
  out << CsvRow(header);
  for (std::size_t i = 0; i < run.record_ids.size(); ++i) {
    std::vector<std::string> row{run.record_ids[i]};
    for (const auto& s : run.series) row.push_back(FormatDouble(s.points()[i].value));
    out << CsvRow(row);
  }
}

void WritePlotData(const RunResult& run, const fs::path& run_dir, bool svg) {
  const fs::path plot_dir = run_dir / "plotdata";
  std::error_code ec;
  fs::create_directories(plot_dir, ec);
  if (ec) throw IoError("cannot create " + plot_dir.string() + ": " + ec.message());

  for (const auto& [prefix, stem] : kScatterFiles) {
    const auto* precision = run.Find(std::string(prefix) + "_precision");
    const auto* recall = run.Find(std::string(prefix) + "_recall");
    if (precision == nullptr || recall == nullptr) continue;
    std::string csv = CsvRow({"id", "precision", "recall"});
    for (std::size_t i = 0; i < run.record_ids.size(); ++i) {
      csv += CsvRow({run.record_ids[i], FormatDouble(precision->points()[i].value),
                     FormatDouble(recall->points()[i].value)});
    }
    WriteFile(plot_dir / (std::string(stem) + "_scatter.csv"), csv);
    if (svg) {
      WriteFile(plot_dir / (std::string(stem) + "_scatter.svg"),
                ScatterSvg(std::string(prefix) + " precision vs recall", precision->values(),
                           recall->values()));
    }
  }

  for (const auto& s : run.series) {
    if (!StartsWith(s.name(), "cosine_")) continue;
    const auto summary = Summarize(s, run.histogram_bins);
    const auto& hist = summary.histogram;
    std::string csv = CsvRow({"bin_low", "bin_high", "count"});
    for (std::size_t b = 0; b < hist.counts.size(); ++b) {
      csv += CsvRow({FormatDouble(hist.edges[b]), FormatDouble(hist.edges[b + 1]),
                     std::to_string(hist.counts[b])});
    }
    WriteFile(plot_dir / (s.name() + "_hist.csv"), csv);
    if (svg) WriteFile(plot_dir / (s.name() + "_hist.svg"), HistogramSvg(s.name(), hist));
  }
}

fs::path WriteRun(const RunResult& run, const fs::path& out_dir, const WriteOptions& options) {
  ValidateRun(run);
  if (run.run_id.empty() || run.run_id.find('/') != std::string::npos || run.run_id == "." ||
      run.run_id == "..") {
    throw InputError("invalid run id '" + run.run_id + "'");
  }
  const fs::path run_dir = out_dir / run.run_id;
  std::error_code ec;
  if (fs::exists(run_dir, ec)) {
    if (!options.force) {
      throw IoError("run directory " + run_dir.string() +
                    " already exists (use --force to overwrite)");
    }
    fs::remove_all(run_dir / "plotdata", ec);
  }
  fs::create_directories(run_dir, ec);
  if (ec) throw IoError("cannot create " + run_dir.string() + ": " + ec.message());

  std::ostringstream scores;
  WriteScoresCsv(run, scores);
  WriteFile(run_dir / "scores.csv", scores.str());
  WritePlotData(run, run_dir, options.svg);
  const fs::path manifest = run_dir / "run.json";
  WriteFile(manifest, RunToJson(run).dump(2) + "\n");
  return manifest;
}

RunResult ReadRun(const fs::path& run_dir) {
  const fs::path manifest = run_dir / "run.json";
  if (!fs::exists(manifest)) throw InputError("no run.json in " + run_dir.string());
  json doc;
  try {
    doc = json::parse(ReadFile(manifest));
  } catch (const json::parse_error& e) {
    throw InputError(manifest.string() + ": " + e.what());
  }

  RunResult run;
  std::vector<std::string> metrics;
  try {
    if (doc.at("schema_version").get<int>() != kRunSchemaVersion) {
      throw InputError(manifest.string() + ": unsupported schema_version");
    }
    run.run_id = doc.at("run_id").get<std::string>();
    const auto& meta = doc.at("eval_set");
    run.eval_set.source_path = meta.at("source_path").get<std::string>();
    run.eval_set.created = meta.at("created").get<std::string>();
    run.eval_set.variant = meta.at("variant").get<std::string>();
    run.record_ids = doc.at("record_ids").get<std::vector<std::string>>();
    metrics = doc.at("metrics").get<std::vector<std::string>>();
    run.histogram_bins = doc.at("histogram_bins").get<int>();
    run.degenerate_records =
        doc.at("degenerate_records").get<std::map<std::string, std::vector<std::string>>>();
    run.provenance = doc.at("provenance");
  } catch (const json::exception& e) {
    throw InputError(manifest.string() + ": " + e.what());
  }

  const fs::path scores_path = run_dir / "scores.csv";
  const auto rows = ReadCsvRecords(ReadFile(scores_path));
  std::vector<std::string> expected_header{"id"};
  expected_header.insert(expected_header.end(), metrics.begin(), metrics.end());
  if (rows.empty() || rows[0].fields != expected_header) {
    throw InputError(scores_path.string() + ": header does not match run.json metrics");
  }
  if (rows.size() - 1 != run.record_ids.size()) {
    throw InputError(scores_path.string() + ": expected " +
                     std::to_string(run.record_ids.size()) + " rows");
  }
  std::vector<std::vector<MetricPoint>> columns(metrics.size());
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.fields.size() != expected_header.size() || row.fields[0] != run.record_ids[r - 1]) {
      throw InputError(scores_path.string() + ": line " + std::to_string(row.line) +
                       " does not match record " + run.record_ids[r - 1]);
    }
    for (std::size_t m = 0; m < metrics.size(); ++m) {
      columns[m].push_back({row.fields[0], ParseDouble(row.fields[m + 1])});
    }
  }
  for (std::size_t m = 0; m < metrics.size(); ++m) {
    run.series.emplace_back(metrics[m], run.eval_set.variant, std::move(columns[m]));
  }
  return run;
}

std::string FormatSummaryTable(const RunResult& run) {
  std::size_t width = 6;
  for (const auto& s : run.series) width = std::max(width, s.name().size());
  std::ostringstream out;
  out << std::left << std::setw(static_cast<int>(width)) << "metric" << std::right
      << std::setw(11) << "mean" << std::setw(11) << "std" << std::setw(11) << "min"
      << std::setw(11) << "max" << std::setw(7) << "n" << '\n';
  out << std::fixed << std::setprecision(6);
  for (const auto& s : run.series) {
    const auto summary = Summarize(s, run.histogram_bins);
    out << std::left << std::setw(static_cast<int>(width)) << s.name() << std::right
        << std::setw(11) << summary.mean << std::setw(11) << summary.std << std::setw(11)
        << summary.min << std::setw(11) << summary.max << std::setw(7) << summary.count
        << '\n';
  }
  return out.str();
}

std::string_view VerdictName(Verdict verdict) {
  switch (verdict) {
    case Verdict::kImproved:
      return "improved";
    case Verdict::kDegraded:
      return "degraded";
    case Verdict::kUnchanged:
      return "unchanged";
  }
  return "unknown";
}

bool LowerIsBetter(const std::string& metric) { return metric == "hallucination"; }

ComparisonReport CompareRuns(const RunResult& a, const RunResult& b, double threshold) {
  const std::set<std::string> ids_a(a.record_ids.begin(), a.record_ids.end());
  const std::set<std::string> ids_b(b.record_ids.begin(), b.record_ids.end());
  if (ids_a != ids_b) {
    std::vector<std::string> diff;
    std::set_symmetric_difference(ids_a.begin(), ids_a.end(), ids_b.begin(), ids_b.end(),
                                  std::back_inserter(diff));
    std::string listed;
    for (std::size_t i = 0; i < diff.size() && i < 10; ++i) listed += (i ? ", " : "") + diff[i];
    throw InputError("runs '" + a.run_id + "' and '" + b.run_id +
                     "' cover different records: " + listed);
  }

  ComparisonReport report;
  report.run_a = a.run_id;
  report.run_b = b.run_id;
  report.threshold = threshold;
  for (const auto& series_a : a.series) {
    const auto* series_b = b.Find(series_a.name());
    if (series_b == nullptr) {
      report.warnings.push_back("metric '" + series_a.name() + "' only in run '" + a.run_id + "'");
      continue;
    }
    MetricComparison cmp;
    cmp.metric = series_a.name();
    cmp.summary_a = Summarize(series_a, a.histogram_bins);
    cmp.summary_b = Summarize(*series_b, b.histogram_bins);
    cmp.delta = ComputeMeanDelta(series_a, *series_b);
    const double gain = LowerIsBetter(cmp.metric) ? -cmp.delta.delta_mean : cmp.delta.delta_mean;
    if (gain > threshold) {
      cmp.verdict = Verdict::kImproved;
    } else if (gain < -threshold) {
      cmp.verdict = Verdict::kDegraded;
    }
    report.metrics.push_back(std::move(cmp));
  }
  for (const auto& series_b : b.series) {
    if (a.Find(series_b.name()) == nullptr) {
      report.warnings.push_back("metric '" + series_b.name() + "' only in run '" + b.run_id + "'");
    }
  }
  return report;
}

json ComparisonToJson(const ComparisonReport& report) {
  json metrics = json::array();
  for (const auto& cmp : report.metrics) {
    json deltas = json::object();
    for (const auto& point : cmp.delta.per_record.points()) deltas[point.record_id] = point.value;
    metrics.push_back({{"metric", cmp.metric},
                       {"delta_mean", cmp.delta.delta_mean},
                       {"verdict", VerdictName(cmp.verdict)},
                       {"summary_a", SummaryToJson(cmp.summary_a)},
                       {"summary_b", SummaryToJson(cmp.summary_b)},
                       {"per_record_deltas", deltas}});
  }
  return {{"run_a", report.run_a},
          {"run_b", report.run_b},
          {"threshold", report.threshold},
          {"metrics", metrics},
          {"warnings", report.warnings}};
}

std::string FormatComparisonTable(const ComparisonReport& report) {
  std::size_t width = 6;
  for (const auto& cmp : report.metrics) width = std::max(width, cmp.metric.size());
  std::ostringstream out;
  out << "comparing " << report.run_b << " against " << report.run_a
      << " (threshold " << FormatDouble(report.threshold) << ")\n";
  out << std::left << std::setw(static_cast<int>(width)) << "metric" << std::right
      << std::setw(11) << "mean_a" << std::setw(11) << "mean_b" << "  "
      << std::left << std::setw(24) << "delta_mean" << "verdict\n";
  for (const auto& cmp : report.metrics) {
    std::ostringstream means;
    means << std::fixed << std::setprecision(6) << std::setw(11) << cmp.summary_a.mean
          << std::setw(11) << cmp.summary_b.mean;
    out << std::left << std::setw(static_cast<int>(width)) << cmp.metric << means.str() << "  "
        << std::left << std::setw(24) << FormatDouble(cmp.delta.delta_mean)
        << VerdictName(cmp.verdict) << '\n';
  }
  for (const auto& warning : report.warnings) out << "warning: " << warning << '\n';
  return out.str();
}

}  // namespace e2e_bench
