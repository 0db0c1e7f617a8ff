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

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any fails. CLI criteria drive the real executable.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "e2e_bench/embedding.h"
#include "e2e_bench/rouge.h"
#include "e2e_bench/stats.h"
#include "e2e_bench/util.h"
#include "json.hpp"
#include "oracles.h"
#include "test_util.h"

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;
using e2e_bench::testing::Fixture;
using e2e_bench::testing::ReadText;
using e2e_bench::testing::WriteText;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects failure messages; the first few end up in the report line.
class Check {
 public:
  void That(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  Outcome Done(std::string detail) const {
    if (failures_.empty()) return {true, std::move(detail)};
    std::string joined;
    for (std::size_t i = 0; i < failures_.size() && i < 3; ++i) {
      joined += (i ? "; " : "") + failures_[i];
    }
    if (failures_.size() > 3) joined += "; +" + std::to_string(failures_.size() - 3) + " more";
    return {false, joined};
  }

 private:
  std::vector<std::string> failures_;
};

std::string Quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  return out + "'";
}

struct CliRun {
  int code = -1;
  std::string output;
};

CliRun Cli(const fs::path& work, const std::vector<std::string>& args) {
  static int counter = 0;
  const fs::path log = work / ("cli_" + std::to_string(counter++) + ".log");
  std::string command = Quote(E2E_BENCH_EXE);
  for (const auto& arg : args) command += " " + Quote(arg);
  command += " > " + Quote(log.string()) + " 2>&1";
  const int status = std::system(command.c_str());
  CliRun run;
  run.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  run.output = ReadText(log);
  return run;
}

// scores.csv as column name -> values, plus the id column.
struct Scores {
  std::vector<std::string> ids;
  std::map<std::string, std::vector<double>> columns;
};

Scores ReadScores(const fs::path& path) {
  const auto rows = e2e_bench::ReadCsvRecords(ReadText(path));
  Scores scores;
  if (rows.empty()) return scores;
  const auto& header = rows[0].fields;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    scores.ids.push_back(rows[r].fields[0]);
    for (std::size_t c = 1; c < header.size(); ++c) {
      scores.columns[header[c]].push_back(std::stod(rows[r].fields[c]));
    }
  }
  return scores;
}

double PlainMean(const std::vector<double>& v) {
  long double sum = 0;
  for (double x : v) sum += x;
  return v.empty() ? NAN : static_cast<double>(sum / v.size());
}

e2e_bench::TokenSequence RandomTokens(std::mt19937& rng) {
  std::uniform_int_distribution<std::size_t> len(0, 8);
  std::uniform_int_distribution<int> sym(0, 4);
  e2e_bench::TokenSequence seq(len(rng));
  for (auto& t : seq) t = std::string(1, static_cast<char>('a' + sym(rng)));
  return seq;
}

Outcome RougeOracle() {
  Check check;
  const auto start = std::chrono::steady_clock::now();
  std::mt19937 rng(1000);
  int mismatches = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto cand = RandomTokens(rng);
    const auto ref = RandomTokens(rng);
    for (std::size_t n : {1u, 2u}) {
      const auto got = e2e_bench::RougeN(cand, ref, static_cast<int>(n));
      const auto want = e2e_bench::oracle::NaiveRougeN(cand, ref, n);
      if (got.precision != want.precision || got.recall != want.recall) ++mismatches;
    }
    const auto got = e2e_bench::RougeLcs(cand, ref);
    const auto want = e2e_bench::oracle::NaiveRougeLcs(cand, ref);
    if (got.precision != want.precision || got.recall != want.recall) ++mismatches;
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  check.That(mismatches == 0, std::to_string(mismatches) + " mismatches");
  check.That(seconds < 10.0, "took " + std::to_string(seconds) + " s");
  return check.Done("1000 pairs, 0 mismatches, " + std::to_string(seconds) + " s");
}

Outcome CosineSuite() {
  Check check;
  std::mt19937_64 rng(2000);
  std::uniform_int_distribution<std::size_t> dims_dist(2, 512);
  std::uniform_real_distribution<double> scale(1e-3, 1e3);
  std::normal_distribution<double> normal(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t dims = dims_dist(rng);
    std::vector<double> x(dims), y(dims);
    for (auto& v : x) v = normal(rng);
    for (auto& v : y) v = normal(rng);
    const e2e_bench::EmbeddingVector ex(x), ey(y);
    const double xy = e2e_bench::CosineSimilarity(ex, ey);
    const double k = scale(rng);
    std::vector<double> kx = x;
    for (auto& v : kx) v *= k;
    // Orthogonal partner: remove y's projection onto x.
    double dot = 0, nn = 0;
    for (std::size_t d = 0; d < dims; ++d) {
      dot += x[d] * y[d];
      nn += x[d] * x[d];
    }
    std::vector<double> orth(dims);
    for (std::size_t d = 0; d < dims; ++d) orth[d] = y[d] - dot / nn * x[d];
    const double errs[] = {
        std::abs(e2e_bench::CosineSimilarity(ex, ex) - 1.0),
        std::abs(e2e_bench::CosineSimilarity(ex, e2e_bench::EmbeddingVector(orth))),
        std::abs(xy - e2e_bench::CosineSimilarity(ey, ex)),
        std::abs(xy - e2e_bench::CosineSimilarity(e2e_bench::EmbeddingVector(kx), ey)),
    };
    for (double e : errs) worst = std::max(worst, e);
  }
  check.That(worst <= 1e-9, "max deviation " + e2e_bench::FormatDouble(worst));
  return check.Done("1000 pairs, max deviation " + e2e_bench::FormatDouble(worst));
}

Outcome IdentityRun(const fs::path& work) {
  Check check;
  std::string corpus;
  std::istringstream lines(ReadText(Fixture("qa50.jsonl")));
  for (std::string line; std::getline(lines, line);) {
    if (line.empty()) continue;
    auto record = json::parse(line);
    record["candidate_answer"] = record["golden_answer"];
    corpus += record.dump() + "\n";
  }
  WriteText(work / "identity.jsonl", corpus);
  const auto cli = Cli(work, {"run", (work / "identity.jsonl").string(), "--out",
                              (work / "runs").string()});
  check.That(cli.code == 0, "exit " + std::to_string(cli.code) + ": " + cli.output);
  if (cli.code != 0) return check.Done("");
  const auto scores = ReadScores(work / "runs" / "identity" / "scores.csv");
  const double cosine_mean = PlainMean(scores.columns.at("cosine_mock"));
  check.That(std::abs(cosine_mean - 1.0) <= 1e-6,
             "cosine mean " + e2e_bench::FormatDouble(cosine_mean));
  for (const auto* metric : {"rouge1", "rouge2", "rougeLcs"}) {
    for (const auto* part : {"_precision", "_recall"}) {
      const std::string name = std::string(metric) + part;
      for (double v : scores.columns.at(name)) check.That(v == 1.0, name + " = " + std::to_string(v));
    }
  }
  check.That(scores.ids.size() == 50, "expected 50 records");
  return check.Done("50 records, cosine mean " + e2e_bench::FormatDouble(cosine_mean) +
                    ", rouge P = R = 1");
}

Outcome NegativeControl(const fs::path& work) {
  Check check;
  const auto cli = Cli(work, {"baseline", Fixture("qa50.jsonl").string(), "--vocab",
                              Fixture("nonce_words.txt").string(), "--seed", "5", "--out",
                              (work / "runs").string()});
  check.That(cli.code == 0, "exit " + std::to_string(cli.code) + ": " + cli.output);
  if (cli.code != 0) return check.Done("");
  const auto scores = ReadScores(work / "runs" / "qa50-random-baseline" / "scores.csv");
  const double cosine_mean = PlainMean(scores.columns.at("cosine_mock"));
  check.That(std::abs(cosine_mean) <= 1e-9, "cosine mean " + e2e_bench::FormatDouble(cosine_mean));
  for (const auto* name : {"rouge1_recall", "rouge2_recall", "rougeLcs_recall"}) {
    const double m = PlainMean(scores.columns.at(name));
    check.That(m == 0.0, std::string(name) + " mean " + e2e_bench::FormatDouble(m));
  }
  return check.Done("cosine mean " + e2e_bench::FormatDouble(cosine_mean) +
                    ", rouge recall mean 0");
}

Outcome Correlation(const fs::path& work) {
  Check check;
  std::mt19937_64 rng(5000);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  auto series = [](const std::string& name, const std::vector<double>& values) {
    std::vector<e2e_bench::MetricPoint> points;
    for (std::size_t i = 0; i < values.size(); ++i) points.push_back({std::to_string(i), values[i]});
    return e2e_bench::MetricSeries(name, "v", std::move(points));
  };
  std::vector<double> x(1000), y(1000), affine(1000);
  for (std::size_t i = 0; i < 1000; ++i) {
    x[i] = uniform(rng);
    y[i] = uniform(rng);
    affine[i] = -2.5 * x[i] + 0.75;
  }
  const double r2_affine = e2e_bench::RSquared(series("x", x), series("a", affine));
  const double r2_indep = e2e_bench::RSquared(series("x", x), series("y", y));
  check.That(std::abs(r2_affine - 1.0) <= 1e-9, "affine r2 " + e2e_bench::FormatDouble(r2_affine));
  check.That(r2_indep < 0.02, "independent r2 " + e2e_bench::FormatDouble(r2_indep));

  const auto run = Cli(work, {"run", Fixture("qa50.jsonl").string(), "--run-id", "r2fixture",
                              "--out", (work / "runs").string(), "--metrics", "cosine",
                              "--provider",
                              "file-cache:path=" + Fixture("r2/st.cache.jsonl").string() + ",label=st",
                              "--provider",
                              "file-cache:path=" + Fixture("r2/use.cache.jsonl").string() +
                                  ",label=use"});
  check.That(run.code == 0, "run exit " + std::to_string(run.code) + ": " + run.output);
  if (run.code != 0) return check.Done("");
  const auto cor = Cli(work, {"correlate", "r2fixture", "cosine_st", "cosine_use", "--out",
                              (work / "runs").string()});
  check.That(cor.code == 0, "correlate exit " + std::to_string(cor.code) + ": " + cor.output);
  const std::string marker = "r2(cosine_st, cosine_use) = ";
  const auto at = cor.output.find(marker);
  check.That(at != std::string::npos, "no r2 line in: " + cor.output);
  if (at == std::string::npos) return check.Done("");
  const double r2_cli = std::stod(cor.output.substr(at + marker.size()));

  const auto scores = ReadScores(work / "runs" / "r2fixture" / "scores.csv");
  const double r2_oracle = e2e_bench::oracle::LeastSquaresR2(scores.columns.at("cosine_st"),
                                                             scores.columns.at("cosine_use"));
  check.That(std::abs(r2_cli - 0.7) <= 0.01, "fixture r2 " + e2e_bench::FormatDouble(r2_cli));
  check.That(std::abs(r2_cli - r2_oracle) <= 1e-9,
             "cli " + e2e_bench::FormatDouble(r2_cli) + " vs oracle " +
                 e2e_bench::FormatDouble(r2_oracle));
  std::ostringstream detail;
  detail << "affine " << r2_affine << ", independent " << r2_indep << ", fixture " << r2_cli
         << " (oracle " << r2_oracle << ")";
  return check.Done(detail.str());
}

Outcome PromptAb(const fs::path& work) {
  Check check;
  const std::string st = "file-cache:path=" + Fixture("prompt_ab/st.cache.jsonl").string() + ",label=st";
  const std::string use =
      "file-cache:path=" + Fixture("prompt_ab/use.cache.jsonl").string() + ",label=use";
  const fs::path out = work / "ab";
  for (const auto* variant : {"standard", "enhanced"}) {
    const auto run = Cli(work, {"run", Fixture(std::string("prompt_ab/") + variant + ".jsonl").string(),
                                "--out", out.string(), "--provider", st, "--provider", use});
    check.That(run.code == 0, std::string(variant) + " exit " + std::to_string(run.code) + ": " +
                                  run.output);
    if (run.code != 0) return check.Done("");
  }
  const auto cmp = Cli(work, {"compare", "standard", "enhanced", "--out", out.string()});
  check.That(cmp.code == 0, "compare exit " + std::to_string(cmp.code) + ": " + cmp.output);
  if (cmp.code != 0) return check.Done("");

  const auto report = json::parse(ReadText(out / "comparison.json"));
  const auto construction = json::parse(ReadText(Fixture("prompt_ab/construction.json")));
  std::map<std::string, json> by_metric;
  for (const auto& m : report.at("metrics")) by_metric[m.at("metric").get<std::string>()] = m;

  int rouge_metrics = 0;
  for (const auto& [name, m] : by_metric) {
    if (name.starts_with("rouge") || name == "hallucination") {
      ++rouge_metrics;
      check.That(m.at("verdict") == "unchanged", name + " verdict " + m.at("verdict").dump());
      check.That(m.at("delta_mean").get<double>() == 0.0, name + " moved");
    }
  }
  check.That(rouge_metrics == 10, "expected 10 lexical metrics, got " + std::to_string(rouge_metrics));

  double worst = 0.0;
  std::ostringstream means;
  for (const auto* metric : {"cosine_st", "cosine_use"}) {
    if (!by_metric.contains(metric)) {
      check.That(false, std::string("missing ") + metric);
      continue;
    }
    const auto& m = by_metric.at(metric);
    check.That(m.at("verdict") == "improved", std::string(metric) + " verdict " + m.at("verdict").dump());
    long double sum = 0;
    std::size_t n = 0;
    for (const auto& record : construction.at("records")) {
      const auto& c = record.at(metric);
      const double expected = c.at("enhanced").get<double>() - c.at("standard").get<double>();
      const double got = m.at("per_record_deltas").at(record.at("id").get<std::string>()).get<double>();
      worst = std::max(worst, std::abs(got - expected));
      sum += expected;
      ++n;
    }
    const double expected_mean = static_cast<double>(sum / n);
    worst = std::max(worst, std::abs(m.at("delta_mean").get<double>() - expected_mean));
    means << metric << " +" << e2e_bench::FormatDouble(std::round(expected_mean * 1e4) / 1e4) << " ";
  }
  check.That(worst <= 1e-12, "delta deviation " + e2e_bench::FormatDouble(worst));
  return check.Done(means.str() + "improved, 10 lexical metrics unchanged, max delta deviation " +
                    e2e_bench::FormatDouble(worst));
}

Outcome Determinism(const fs::path& work) {
  Check check;
  std::vector<std::string> contents;
  for (const auto* out : {"det_a", "det_b"}) {
    const auto cli = Cli(work, {"baseline", Fixture("qa50.jsonl").string(), "--seed", "1234",
                                "--out", (work / out).string()});
    check.That(cli.code == 0, "exit " + std::to_string(cli.code) + ": " + cli.output);
    contents.push_back(ReadText(work / out / "qa50-random-baseline" / "scores.csv"));
  }
  check.That(!contents[0].empty() && contents[0] == contents[1], "scores.csv differs");
  return check.Done("seeded baseline twice, scores.csv byte-identical (" +
                    std::to_string(contents[0].size()) + " bytes)");
}

}  // namespace

int main() {
  e2e_bench::testing::TempDir work;
  struct Criterion {
    int number;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "rouge oracle equivalence", [] { return RougeOracle(); }},
      {2, "cosine algebra", [] { return CosineSuite(); }},
      {3, "identity end-to-end", [&] { return IdentityRun(work.path()); }},
      {4, "random-words negative control", [&] { return NegativeControl(work.path()); }},
      {5, "correlation calibration", [&] { return Correlation(work.path()); }},
      {6, "prompt A/B comparison", [&] { return PromptAb(work.path()); }},
      {7, "determinism", [&] { return Determinism(work.path()); }},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    if (!outcome.pass) ++failed;
    std::cout << (outcome.pass ? "PASS" : "FAIL") << " [" << c.number << "] " << c.name << ": "
              << outcome.detail << std::endl;
  }
  std::cout << "SKIP [8] absolute chatbot means: not asserted; they depend on a proprietary "
               "chatbot corpus and unversioned embedding models"
            << std::endl;
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed")
            << std::endl;
  return failed == 0 ? 0 : 1;
}
