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

#include "e2e_bench/corpus.h"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <limits>
#include <random>
#include <sstream>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "e2e_bench/errors.h"
#include "e2e_bench/util.h"
#include "json.hpp"

namespace e2e_bench {
namespace {

using json = nlohmann::json;

// Common English words; overlaps ordinary answers on purpose so the default
// baseline resembles "random words" rather than a constructed null.
constexpr std::string_view kBuiltinWords[] = {
    "about",   "above",   "across",  "after",    "again",   "air",
    "always",  "animal",  "answer",  "apple",    "area",    "around",
    "ask",     "away",    "back",    "ball",     "because", "bed",
    "before",  "began",   "begin",   "behind",   "below",   "best",
    "better",  "between", "big",     "bird",     "black",   "blue",
    "boat",    "body",    "book",    "both",     "box",     "boy",
    "bring",   "brown",   "build",   "call",     "came",    "car",
    "carry",   "cat",     "change",  "child",    "city",    "close",
    "cold",    "color",   "come",    "country",  "cover",   "cross",
    "cut",     "dark",    "day",     "deep",     "dog",     "door",
    "down",    "draw",    "dream",   "drive",    "dry",     "during",
    "each",    "early",   "earth",   "east",     "eat",     "egg",
    "end",     "enough",  "even",    "ever",     "every",   "eye",
    "face",    "fall",    "family",  "far",      "farm",    "fast",
    "father",  "feet",    "field",   "fire",     "fish",    "five",
    "floor",   "flower",  "fly",     "follow",   "food",    "foot",
    "forest",  "form",    "found",   "four",     "free",    "friend",
    "front",   "full",    "game",    "garden",   "girl",    "give",
    "glass",   "gold",    "good",    "great",    "green",   "ground",
    "group",   "grow",    "hand",    "happy",    "hard",    "head",
    "hear",    "heart",   "heavy",   "help",     "high",    "hill",
    "hold",    "home",    "horse",   "hot",      "house",   "hundred",
    "idea",    "island",  "keep",    "kind",     "king",    "know",
    "lake",    "land",    "large",   "late",     "laugh",   "leaf",
    "learn",   "leave",   "left",    "letter",   "light",   "line",
    "list",    "little",  "live",    "long",     "look",    "love",
    "low",     "machine", "make",    "man",      "many",    "map",
    "mark",    "may",     "mean",    "measure",  "meet",    "might",
    "mile",    "mind",    "money",   "moon",     "morning", "mother",
    "mountain", "move",   "music",   "name",     "near",    "never",
    "night",   "north",   "number",  "ocean",    "often",   "old",
    "open",    "order",   "paper",   "part",     "people",  "picture",
    "piece",   "place",   "plant",   "play",     "point",   "power",
    "quick",   "quiet",   "rain",    "read",     "red",     "river",
    "road",    "rock",    "room",    "round",    "run",     "sea",
    "season",  "seed",    "ship",    "short",    "side",    "sing",
    "sleep",   "slow",    "small",   "snow",     "song",    "south",
    "space",   "stand",   "star",    "stone",    "story",   "street",
    "strong",  "summer",  "sun",     "table",    "tall",    "teach",
    "thought", "three",   "tree",    "true",     "turn",    "under",
    "usual",   "valley",  "voice",   "walk",     "warm",    "watch",
    "water",   "wave",    "west",    "wheel",    "white",   "wild",
    "wind",    "window",  "winter",  "wood",     "word",    "world",
    "write",   "year",    "yellow",  "young",
};

std::string PaddedIndex(std::size_t index) {
  std::string digits = std::to_string(index);
  if (digits.size() < 4) digits.insert(0, 4 - digits.size(), '0');
  return digits;
}

std::string LineError(std::size_t line, const std::string& what) {
  return "line " + std::to_string(line) + ": " + what;
}

std::string StringField(const json& object, const char* key, bool required,
                        std::size_t line) {
  auto it = object.find(key);
  if (it == object.end() || it->is_null()) {
    if (required) {
      throw InputError(LineError(line, std::string("missing field '") + key + "'"));
    }
    return {};
  }
  if (!it->is_string()) {
    throw InputError(LineError(line, std::string("field '") + key + "' must be a string"));
  }
  return it->get<std::string>();
}

// Assigns missing ids and fills the set-level variant from the records.
EvalSet Finish(std::vector<EvalRecord> records, std::vector<bool> explicit_id,
               EvalSetMetadata metadata) {
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (!explicit_id[i]) records[i].id = PaddedIndex(i);
  }
  if (metadata.variant.empty()) {
    std::string common;
    bool uniform = true;
    for (const auto& record : records) {
      if (record.variant.empty()) continue;
      if (common.empty()) {
        common = record.variant;
      } else if (common != record.variant) {
        uniform = false;
      }
    }
    metadata.variant = uniform && !common.empty() ? common : "default";
  }
  return EvalSet(std::move(records), std::move(metadata));
}

// Uniform index in [0, bound) by rejection; independent of the standard
// library's distribution implementation so seeds reproduce across platforms.
std::size_t DrawIndex(std::mt19937_64& rng, std::size_t bound) {
  const std::uint64_t n = bound;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t value;
  do {
    value = rng();
  } while (value >= limit);
  return static_cast<std::size_t>(value % n);
}

}  // namespace

EvalSet::EvalSet(std::vector<EvalRecord> records, EvalSetMetadata metadata)
    : records_(std::move(records)), metadata_(std::move(metadata)) {
  if (records_.empty()) throw InputError("evaluation set is empty");
  std::unordered_set<std::string> seen;
  for (const auto& record : records_) {
    if (record.id.empty()) throw InputError("record with empty id");
    if (!seen.insert(record.id).second) {
      throw InputError("duplicate record id '" + record.id + "'");
    }
    if (TrimWhitespace(record.golden_answer).empty()) {
      throw InputError("record '" + record.id + "' has a blank golden_answer");
    }
  }
}

std::vector<std::string> EvalSet::ids() const {
  std::vector<std::string> out;
  out.reserve(records_.size());
  for (const auto& record : records_) out.push_back(record.id);
  return out;
}

CorpusFormat FormatFromPath(const std::filesystem::path& path) {
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return ext == ".csv" ? CorpusFormat::kCsv : CorpusFormat::kJsonl;
}

EvalSet ParseJsonl(std::istream& in, EvalSetMetadata metadata) {
  std::vector<EvalRecord> records;
  std::vector<bool> explicit_id;
  std::unordered_map<std::string, std::size_t> id_lines;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (TrimWhitespace(text).empty()) continue;
    json object;
    try {
      object = json::parse(text);
    } catch (const json::parse_error& e) {
      throw InputError(LineError(line, std::string("invalid JSON: ") + e.what()));
    }
    if (!object.is_object()) throw InputError(LineError(line, "expected a JSON object"));

    EvalRecord record;
    record.id = StringField(object, "id", false, line);
    record.question = StringField(object, "question", true, line);
    record.golden_answer = StringField(object, "golden_answer", true, line);
    record.candidate_answer = StringField(object, "candidate_answer", true, line);
    record.variant = StringField(object, "variant", false, line);
    if (TrimWhitespace(record.golden_answer).empty()) {
      throw InputError(LineError(line, "golden_answer is blank"));
    }
    if (!record.id.empty()) {
      auto [it, inserted] = id_lines.emplace(record.id, line);
      if (!inserted) {
        throw InputError(LineError(line, "duplicate id '" + record.id +
                                             "' (first seen on line " +
                                             std::to_string(it->second) + ")"));
      }
    }
    explicit_id.push_back(!record.id.empty());
    records.push_back(std::move(record));
  }
  return Finish(std::move(records), std::move(explicit_id), std::move(metadata));
}

EvalSet ParseCsv(std::istream& in, EvalSetMetadata metadata) {
  const std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
  auto rows = ReadCsvRecords(text);
  if (rows.empty()) throw InputError("CSV corpus has no header");

  std::unordered_map<std::string, std::size_t> column;
  for (std::size_t i = 0; i < rows[0].fields.size(); ++i) {
    column[std::string(TrimWhitespace(rows[0].fields[i]))] = i;
  }
  for (const char* required : {"question", "golden_answer", "candidate_answer"}) {
    if (!column.contains(required)) {
      throw InputError(LineError(1, std::string("missing column '") + required + "'"));
    }
  }
  auto cell = [&](const CsvRecord& row, const char* name) -> std::string {
    auto it = column.find(name);
    if (it == column.end()) return {};
    if (it->second >= row.fields.size()) {
      throw InputError(LineError(row.line, std::string("missing field '") + name + "'"));
    }
    return row.fields[it->second];
  };

  std::vector<EvalRecord> records;
  std::vector<bool> explicit_id;
  std::unordered_map<std::string, std::size_t> id_lines;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.fields.size() != rows[0].fields.size()) {
      throw InputError(LineError(row.line, "expected " +
                                               std::to_string(rows[0].fields.size()) +
                                               " fields, got " +
                                               std::to_string(row.fields.size())));
    }
    EvalRecord record;
    record.id = cell(row, "id");
    record.question = cell(row, "question");
    record.golden_answer = cell(row, "golden_answer");
    record.candidate_answer = cell(row, "candidate_answer");
    record.variant = cell(row, "variant");
    if (TrimWhitespace(record.golden_answer).empty()) {
      throw InputError(LineError(row.line, "golden_answer is blank"));
    }
    if (!record.id.empty()) {
      auto [it, inserted] = id_lines.emplace(record.id, row.line);
      if (!inserted) {
        throw InputError(LineError(row.line, "duplicate id '" + record.id +
                                                 "' (first seen on line " +
                                                 std::to_string(it->second) + ")"));
      }
    }
    explicit_id.push_back(!record.id.empty());
    records.push_back(std::move(record));
  }
  return Finish(std::move(records), std::move(explicit_id), std::move(metadata));
}

EvalSet LoadEvalSet(const std::filesystem::path& path, CorpusFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open corpus file " + path.string());
  EvalSetMetadata metadata;
  metadata.source_path = path.string();
  metadata.created = UtcTimestamp();
  try {
    return format == CorpusFormat::kCsv ? ParseCsv(in, std::move(metadata))
                                        : ParseJsonl(in, std::move(metadata));
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

EvalSet LoadEvalSet(const std::filesystem::path& path) {
  return LoadEvalSet(path, FormatFromPath(path));
}

void WriteJsonl(const EvalSet& set, std::ostream& out) {
  for (const auto& record : set.records()) {
    json object = {{"id", record.id},
                   {"question", record.question},
                   {"golden_answer", record.golden_answer},
                   {"candidate_answer", record.candidate_answer},
                   {"variant", record.variant}};
    out << object.dump() << '\n';
  }
}

void WriteJsonl(const EvalSet& set, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  WriteJsonl(set, out);
  if (!out) throw IoError("write failed for " + path.string());
}

std::vector<std::string> LoadVocabulary(const RandomWordsPolicy& policy,
                                        const TokenizerConfig& tokenizer) {
  std::vector<std::string> words;
  std::unordered_set<std::string> seen;
  auto add = [&](std::string_view text) {
    for (auto& token : Tokenize(text, tokenizer)) {
      if (seen.insert(token).second) words.push_back(std::move(token));
    }
  };

  if (policy.vocabulary_source == VocabularySource::kBuiltin) {
    for (auto word : kBuiltinWords) add(word);
  } else {
    std::ifstream in(policy.vocabulary_path, std::ios::binary);
    if (!in) {
      throw InputError("cannot read vocabulary file " +
                       policy.vocabulary_path.string());
    }
    std::string line;
    while (std::getline(in, line)) add(line);
  }
  if (words.empty()) throw InputError("vocabulary is empty");
  if (words.size() < kMinVocabularySize) {
    throw InputError("vocabulary has " + std::to_string(words.size()) +
                     " distinct words; at least " +
                     std::to_string(kMinVocabularySize) + " are required");
  }
  return words;
}

EvalSet MakeRandomWordsSet(const EvalSet& base, const RandomWordsPolicy& policy,
                           const TokenizerConfig& tokenizer) {
  return MakeRandomWordsSet(base, policy, LoadVocabulary(policy, tokenizer),
                            tokenizer);
}

EvalSet MakeRandomWordsSet(const EvalSet& base, const RandomWordsPolicy& policy,
                           const std::vector<std::string>& vocabulary,
                           const TokenizerConfig& tokenizer) {
  if (vocabulary.empty()) throw InputError("vocabulary is empty");
  std::mt19937_64 rng(policy.seed);
  std::vector<EvalRecord> records;
  records.reserve(base.size());
  for (const auto& source : base.records()) {
    EvalRecord record = source;
    const std::size_t length = policy.length_mode == LengthMode::kFixed
                                   ? policy.fixed_length
                                   : Tokenize(source.golden_answer, tokenizer).size();
    std::string answer;
    for (std::size_t i = 0; i < length; ++i) {
      if (i > 0) answer += ' ';
      answer += vocabulary[DrawIndex(rng, vocabulary.size())];
    }
    record.candidate_answer = std::move(answer);
    record.variant = std::string(kRandomBaselineVariant);
    records.push_back(std::move(record));
  }
  EvalSetMetadata metadata = base.metadata();
  metadata.variant = std::string(kRandomBaselineVariant);
  return EvalSet(std::move(records), std::move(metadata));
}

}  // namespace e2e_bench
