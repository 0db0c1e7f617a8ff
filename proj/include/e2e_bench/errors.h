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

#ifndef E2E_BENCH_ERRORS_H_
#define E2E_BENCH_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace e2e_bench {

// Base class for all errors raised by the library. The subclasses map onto
// the CLI exit codes (see cli.h).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent evaluation input: corpus files, vocabularies,
// id mismatches between runs, unknown metric names.
class InputError : public Error {
 public:
  using Error::Error;
};

// Embedding provider failures (cache miss, sidecar unreachable, bad
// dimensions). `record_id` is filled in once the failing record is known.
class ProviderError : public Error {
 public:
  explicit ProviderError(const std::string& what, std::string record_id = "")
      : Error(what), record_id_(std::move(record_id)) {}
  const std::string& record_id() const { return record_id_; }

 private:
  std::string record_id_;
};

// A file-cache provider has no vector for the text at `text_index` of the
// requested batch.
class CacheMissError : public ProviderError {
 public:
  CacheMissError(const std::string& what, std::size_t text_index)
      : ProviderError(what), text_index_(text_index) {}
  std::size_t text_index() const { return text_index_; }

 private:
  std::size_t text_index_;
};

// Filesystem failures while reading or writing runs.
class IoError : public Error {
 public:
  using Error::Error;
};

// Precondition violations in numeric routines (empty series, constant
// series, dimension mismatch, zero vectors).
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace e2e_bench

#endif  // E2E_BENCH_ERRORS_H_
