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

#include "e2e_bench/tokenize.h"

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include <cstdint>
#include <string>

#include "e2e_bench/errors.h"

namespace e2e_bench {
namespace {

enum class CharClass { kWord, kPunct, kSeparator };

CharClass Classify(UChar32 c) {
  if (c < 0) return CharClass::kSeparator;  // ill-formed UTF-8
  if (u_isalnum(c)) return CharClass::kWord;
  const int mask = U_GET_GC_MASK(c);
  if (mask & U_GC_M_MASK) return CharClass::kWord;
  if (mask & (U_GC_P_MASK | U_GC_S_MASK)) return CharClass::kPunct;
  return CharClass::kSeparator;
}

void AppendUtf8(std::string& out, UChar32 c) {
  char buf[U8_MAX_LENGTH];
  int32_t len = 0;
  U8_APPEND_UNSAFE(buf, len, c);
  out.append(buf, static_cast<std::size_t>(len));
}

}  // namespace

TokenSequence Tokenize(std::string_view text, const TokenizerConfig& config) {
  TokenSequence tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  };

  const auto* bytes = reinterpret_cast<const uint8_t*>(text.data());
  const auto length = static_cast<int32_t>(text.size());
  int32_t i = 0;
  while (i < length) {
    UChar32 c;
    U8_NEXT(bytes, i, length, c);
    switch (Classify(c)) {
      case CharClass::kWord:
        AppendUtf8(current, config.lowercase ? u_tolower(c) : c);
        break;
      case CharClass::kPunct:
        flush();
        if (config.keep_punctuation) {
          std::string punct;
          AppendUtf8(punct, c);
          tokens.push_back(std::move(punct));
        }
        break;
      case CharClass::kSeparator:
        flush();
        break;
    }
  }
  flush();
  return tokens;
}

NgramMultiset::NgramMultiset(const TokenSequence& tokens, int n) : n_(n) {
  if (n < 1) {
    throw DomainError("n-gram order must be >= 1, got " + std::to_string(n));
  }
  const auto order = static_cast<std::size_t>(n);
  if (tokens.size() < order) return;
  for (std::size_t i = 0; i + order <= tokens.size(); ++i) {
    Ngram gram(tokens.begin() + static_cast<std::ptrdiff_t>(i),
               tokens.begin() + static_cast<std::ptrdiff_t>(i + order));
    ++counts_[std::move(gram)];
    ++total_;
  }
}

std::size_t NgramMultiset::count(const Ngram& gram) const {
  auto it = counts_.find(gram);
  return it == counts_.end() ? 0 : it->second;
}

NgramMultiset Ngrams(const TokenSequence& tokens, int n) {
  return NgramMultiset(tokens, n);
}

}  // namespace e2e_bench
