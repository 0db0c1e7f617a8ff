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

#include "e2e_bench/cli.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "e2e_bench/corpus.h"
#include "e2e_bench/embedding.h"
#include "e2e_bench/errors.h"
#include "e2e_bench/pipeline.h"
#include "e2e_bench/report.h"
#include "e2e_bench/stats.h"
#include "e2e_bench/util.h"

namespace e2e_bench {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

struct GlobalFlags {
  std::string out = "runs";
  std::uint64_t seed = 0;
  std::vector<std::string> metrics;
  std::vector<std::string> providers;
  bool force = false;
  bool lowercase = true;
  bool keep_punctuation = false;
  int bins = 10;
  bool bias_adjust = false;
  bool svg = false;
  std::string run_id;
  std::string format;
};

struct BaselineFlags {
  std::string vocab;
  std::string length = "match";
  std::string against;
  bool allow_partial_join = false;
};

TokenizerConfig Tokenizer(const GlobalFlags& flags) {
  return {.lowercase = flags.lowercase, .keep_punctuation = flags.keep_punctuation};
}

EvalSet LoadCorpus(const std::string& path, const GlobalFlags& flags) {
  if (flags.format.empty()) return LoadEvalSet(path);
  return LoadEvalSet(path, flags.format == "csv" ? CorpusFormat::kCsv : CorpusFormat::kJsonl);
}

RunOptions MakeRunOptions(const GlobalFlags& flags) {
  RunOptions options;
  options.tokenizer = Tokenizer(flags);
  options.metrics = flags.metrics;
  options.bias_adjust = flags.bias_adjust;
  options.histogram_bins = flags.bins;
  const char* env_url = std::getenv(kSidecarUrlEnv);
  const std::string default_url = env_url != nullptr ? env_url : "";
  std::vector<std::string> specs = flags.providers;
  if (specs.empty()) specs.push_back("mock-bow");
  for (const auto& text : specs) {
    options.providers.push_back(ParseProviderSpec(text, options.tokenizer, default_url));
  }
  return options;
}

// Resolves a run reference: an existing directory, or a run id under --out.
fs::path ResolveRunDir(const std::string& ref, const GlobalFlags& flags) {
  if (fs::is_directory(ref)) return ref;
  const fs::path under_out = fs::path(flags.out) / ref;
  if (fs::is_directory(under_out)) return under_out;
  throw InputError("no run directory '" + ref + "' (also looked in " + under_out.string() + ")");
}

json ResolvedConfig(const GlobalFlags& flags) {
  return {{"out", flags.out},
          {"seed", flags.seed},
          {"metrics", flags.metrics},
          {"provider", flags.providers},
          {"force", flags.force},
          {"lowercase", flags.lowercase},
          {"keep-punctuation", flags.keep_punctuation},
          {"bins", flags.bins},
          {"bias-adjust", flags.bias_adjust},
          {"svg", flags.svg},
          {"run-id", flags.run_id},
          {"format", flags.format}};
}

int Evaluate(const EvalSet& set, const std::string& run_id, const GlobalFlags& flags,
             const json& extra_provenance, std::ostream& out,
             RunResult* result_out = nullptr) {
  RunResult run = EvaluateRun(set, MakeRunOptions(flags), run_id);
  run.provenance["seed"] = flags.seed;
  run.provenance["config"] = ResolvedConfig(flags);
  for (const auto& [key, value] : extra_provenance.items()) run.provenance[key] = value;

  const fs::path manifest = WriteRun(run, flags.out, {.force = flags.force, .svg = flags.svg});
  out << "run " << run.run_id << " (" << set.size() << " records, variant "
      << set.metadata().variant << ")\n";
  out << FormatSummaryTable(run);
  for (const auto& [metric, ids] : run.degenerate_records) {
    if (!ids.empty()) {
      out << metric << ": " << ids.size() << " degenerate record(s) scored 0\n";
    }
  }
  out << "wrote " << manifest.string() << '\n';
  if (result_out != nullptr) *result_out = std::move(run);
  return kExitOk;
}

std::string DefaultRunId(const std::string& corpus_path, std::string_view suffix = {}) {
  std::string id = fs::path(corpus_path).stem().string();
  if (id.empty()) id = "run";
  if (!suffix.empty()) id += "-" + std::string(suffix);
  return id;
}

RandomWordsPolicy MakePolicy(const BaselineFlags& baseline, const GlobalFlags& flags) {
  RandomWordsPolicy policy;
  policy.seed = flags.seed;
  if (!baseline.vocab.empty()) {
    policy.vocabulary_source = VocabularySource::kFile;
    policy.vocabulary_path = baseline.vocab;
  }
  if (baseline.length == "match") {
    policy.length_mode = LengthMode::kMatchGolden;
  } else {
    const double n = ParseDouble(baseline.length);
    if (n < 1 || n != static_cast<double>(static_cast<std::size_t>(n))) {
      throw InputError("--length must be 'match' or a positive integer");
    }
    policy.length_mode = LengthMode::kFixed;
    policy.fixed_length = static_cast<std::size_t>(n);
  }
  return policy;
}

void PrintAgainst(const RunResult& baseline, const RunResult& real, bool allow_partial,
                  std::ostream& out) {
  out << "r2 against run " << real.run_id << ":\n";
  for (const auto& series : baseline.series) {
    const auto* other = real.Find(series.name());
    if (other == nullptr) continue;
    out << "  " << series.name() << " ";
    try {
      const auto pairs = JoinById(series, *other, allow_partial);
      if (!pairs.dropped.empty()) {
        out << "(" << pairs.dropped.size() << " unmatched records excluded) ";
      }
      const double r = PearsonCorrelation(pairs.a, pairs.b);
      out << FormatDouble(r * r) << '\n';
    } catch (const DomainError& e) {
      out << "undefined (" << e.what() << ")\n";
    }
  }
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Benchmark chatbot answers against golden answers with embedding cosine "
               "similarity and ROUGE."};
  app.name(args.empty() ? "e2e_bench" : fs::path(args[0]).filename().string());
  app.set_config("--config", "", "Read flags from a key=value config file");
  app.require_subcommand(1);
  app.fallthrough();

  GlobalFlags flags;
  app.add_option("--out", flags.out, "Directory holding run directories")->capture_default_str();
  app.add_option("--seed", flags.seed, "Seed for random-words baselines")->capture_default_str();
  app.add_option("--metrics", flags.metrics,
                 "Comma-separated metrics or groups: cosine, rouge, rouge1, rouge2, rougeLcs, "
                 "hallucination")
      ->delimiter(',');
  app.add_option("--provider", flags.providers,
                 "Embedding provider, repeatable: mock-bow[:dim=N], file-cache:path=F, "
                 "http:model=M[,url=U]; each accepts label=NAME")
      ->take_all();
  app.add_flag("--force", flags.force, "Overwrite an existing run directory");
  app.add_flag("--lowercase,!--no-lowercase", flags.lowercase, "Lowercase tokens")
      ->capture_default_str();
  app.add_flag("--keep-punctuation", flags.keep_punctuation,
               "Keep punctuation as single-character tokens");
  app.add_option("--bins", flags.bins, "Histogram bins for cosine series")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_flag("--bias-adjust", flags.bias_adjust,
               "Also report (s - 0.5) / 0.5 clamped to [0, 1] for every cosine series");
  app.add_flag("--svg", flags.svg, "Render SVG plots next to the plot data");
  app.add_option("--run-id", flags.run_id, "Run id (default: corpus file stem)");
  app.add_option("--format", flags.format, "Corpus format (default: by extension)")
      ->check(CLI::IsMember({"jsonl", "csv"}));

  std::string corpus_path;
  auto* run_cmd = app.add_subcommand("run", "Score a corpus of chatbot answers");
  run_cmd->add_option("corpus", corpus_path, "JSONL or CSV corpus")->required();

  BaselineFlags baseline;
  auto* baseline_cmd =
      app.add_subcommand("baseline", "Score golden answers against seeded random words");
  baseline_cmd->add_option("corpus", corpus_path, "JSONL or CSV corpus")->required();
  baseline_cmd->add_option("--vocab", baseline.vocab,
                           "Vocabulary file, one or more words per line (default: built-in)");
  baseline_cmd->add_option("--length", baseline.length,
                           "'match' (golden token count) or a fixed token count")
      ->capture_default_str();
  baseline_cmd->add_option("--against", baseline.against,
                           "Print r2 between this baseline and an existing run");
  baseline_cmd->add_flag("--allow-partial-join", baseline.allow_partial_join,
                         "Ignore records missing from one run when correlating");

  std::string run_a;
  std::string run_b;
  double threshold = 0.01;
  auto* compare_cmd = app.add_subcommand("compare", "Compare two runs over the same corpus");
  compare_cmd->add_option("run_a", run_a, "Reference run (directory or id)")->required();
  compare_cmd->add_option("run_b", run_b, "Run compared against run_a")->required();
  compare_cmd->add_option("--threshold", threshold, "Minimum |delta mean| for a verdict")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  std::string run_ref;
  std::string metric_a;
  std::string metric_b;
  auto* correlate_cmd = app.add_subcommand("correlate", "r2 between two metrics of one run");
  correlate_cmd->add_option("run", run_ref, "Run directory or id")->required();
  correlate_cmd->add_option("metric_a", metric_a, "First metric")->required();
  correlate_cmd->add_option("metric_b", metric_b, "Second metric")->required();

  auto* report_cmd =
      app.add_subcommand("report", "Print a run's summary and regenerate its plot data");
  report_cmd->add_option("run", run_ref, "Run directory or id")->required();

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& arg : args) argv.push_back(arg.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*run_cmd) {
      const EvalSet set = LoadCorpus(corpus_path, flags);
      const std::string id = flags.run_id.empty() ? DefaultRunId(corpus_path) : flags.run_id;
      return Evaluate(set, id, flags, json{{"command", "run"}}, out);
    }

    if (*baseline_cmd) {
      const EvalSet base = LoadCorpus(corpus_path, flags);
      const RandomWordsPolicy policy = MakePolicy(baseline, flags);
      const EvalSet random_set = MakeRandomWordsSet(base, policy, Tokenizer(flags));
      const std::string id = flags.run_id.empty()
                                 ? DefaultRunId(corpus_path, kRandomBaselineVariant)
                                 : flags.run_id;
      const json provenance = {
          {"command", "baseline"},
          {"random_words",
           {{"vocabulary", baseline.vocab.empty() ? "builtin" : baseline.vocab},
            {"length", baseline.length},
            {"seed", flags.seed}}},
          {"against", baseline.against}};
      RunResult result;
      const int code = Evaluate(random_set, id, flags, provenance, out, &result);
      WriteJsonl(random_set, fs::path(flags.out) / id / "baseline_corpus.jsonl");
      if (!baseline.against.empty()) {
        const RunResult real = ReadRun(ResolveRunDir(baseline.against, flags));
        PrintAgainst(result, real, baseline.allow_partial_join, out);
      }
      return code;
    }

    if (*compare_cmd) {
      const fs::path dir_a = ResolveRunDir(run_a, flags);
      const fs::path dir_b = ResolveRunDir(run_b, flags);
      const auto report = CompareRuns(ReadRun(dir_a), ReadRun(dir_b), threshold);
      out << FormatComparisonTable(report);
      const bool out_given = app.get_option("--out")->count() > 0;
      const fs::path target = (out_given ? fs::path(flags.out) : dir_b) / "comparison.json";
      std::error_code ec;
      fs::create_directories(target.parent_path(), ec);
      std::ofstream file(target, std::ios::binary | std::ios::trunc);
      if (!file) throw IoError("cannot write " + target.string());
      file << ComparisonToJson(report).dump(2) << '\n';
      if (!file) throw IoError("write failed for " + target.string());
      out << "wrote " << target.string() << '\n';
      return kExitOk;
    }

    if (*correlate_cmd) {
      const fs::path dir = ResolveRunDir(run_ref, flags);
      const RunResult run = ReadRun(dir);
      for (const auto* name : {&metric_a, &metric_b}) {
        if (run.Find(*name) == nullptr) {
          std::string available;
          for (const auto& metric : run.MetricNames()) {
            available += (available.empty() ? "" : ", ") + metric;
          }
          throw InputError("unknown metric '" + *name + "'; available: " + available);
        }
      }
      const auto& a = *run.Find(metric_a);
      const auto& b = *run.Find(metric_b);
      const double r2 = RSquared(a, b);
      out << "r2(" << metric_a << ", " << metric_b << ") = " << FormatDouble(r2) << '\n';

      const auto pairs = JoinById(a, b);
      std::string csv = CsvRow({"id", metric_a, metric_b});
      for (std::size_t i = 0; i < pairs.ids.size(); ++i) {
        csv += CsvRow({pairs.ids[i], FormatDouble(pairs.a[i]), FormatDouble(pairs.b[i])});
      }
      const fs::path target = dir / "plotdata" / ("correlation_" + metric_a + "_" + metric_b + ".csv");
      std::error_code ec;
      fs::create_directories(target.parent_path(), ec);
      std::ofstream file(target, std::ios::binary | std::ios::trunc);
      if (!file) throw IoError("cannot write " + target.string());
      file << csv;
      if (!file) throw IoError("write failed for " + target.string());
      out << "wrote " << target.string() << '\n';
      return kExitOk;
    }

    if (*report_cmd) {
      const fs::path dir = ResolveRunDir(run_ref, flags);
      const RunResult run = ReadRun(dir);
      WritePlotData(run, dir, flags.svg);
      out << "run " << run.run_id << " (" << run.record_ids.size() << " records, variant "
          << run.eval_set.variant << ")\n";
      out << FormatSummaryTable(run);
      return kExitOk;
    }
  } catch (const ProviderError& e) {
    err << "error: provider failure: " << e.what() << '\n';
    return kExitProvider;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace e2e_bench
