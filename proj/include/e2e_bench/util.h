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

#ifndef E2E_BENCH_UTIL_H_
#define E2E_BENCH_UTIL_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace e2e_bench {

// Shortest decimal representation that parses back to the same double.
std::string FormatDouble(double value);

// Throws InputError unless the whole of `text` is a decimal number.
double ParseDouble(std::string_view text);

std::string_view TrimWhitespace(std::string_view text);

// Current UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string UtcTimestamp();

// Minimal RFC 4180 support: fields containing separators, quotes or line
// breaks are quoted and embedded quotes doubled.
std::string CsvEscape(std::string_view field);
std::string CsvRow(const std::vector<std::string>& fields);

struct CsvRecord {
  std::size_t line;  // 1-based line where the record starts
  std::vector<std::string> fields;
};

// Parses RFC 4180 text (quoted fields may span lines). Blank lines are
// skipped. Throws InputError with the line number on malformed quoting.
std::vector<CsvRecord> ReadCsvRecords(std::string_view text);

}  // namespace e2e_bench

#endif  // E2E_BENCH_UTIL_H_
