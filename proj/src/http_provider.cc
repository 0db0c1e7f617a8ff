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

#include "e2e_bench/http_provider.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <thread>

#include "e2e_bench/errors.h"
#include "httplib.h"
#include "json.hpp"

namespace e2e_bench {
namespace {

using json = nlohmann::json;

std::chrono::microseconds Seconds(double seconds) {
  return std::chrono::microseconds(static_cast<long long>(seconds * 1e6));
}

}  // namespace

HttpProvider::HttpProvider(ProviderSpec spec) : spec_(std::move(spec)) {
  const auto scheme_end = spec_.base_url.find("://");
  if (scheme_end == std::string::npos) {
    throw InputError("http provider url must look like http://host:port, got '" +
                     spec_.base_url + "'");
  }
  const auto path_start = spec_.base_url.find('/', scheme_end + 3);
  host_ = spec_.base_url.substr(0, path_start);
  if (path_start != std::string::npos) {
    path_prefix_ = spec_.base_url.substr(path_start);
    while (!path_prefix_.empty() && path_prefix_.back() == '/') path_prefix_.pop_back();
  }
  if (spec_.attempts < 1) spec_.attempts = 1;
}

std::vector<EmbeddingVector> HttpProvider::Embed(std::span<const std::string> texts) const {
  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (std::size_t begin = 0; begin < texts.size(); begin += kMaxSidecarBatch) {
    const std::size_t count = std::min(kMaxSidecarBatch, texts.size() - begin);
    auto batch = EmbedBatch(texts.subspan(begin, count));
    std::move(batch.begin(), batch.end(), std::back_inserter(out));
  }
  return out;
}

std::vector<EmbeddingVector> HttpProvider::EmbedBatch(std::span<const std::string> texts) const {
  const json request = {{"texts", std::vector<std::string>(texts.begin(), texts.end())},
                        {"model", spec_.model}};
  const std::string body = request.dump();
  const std::string path = path_prefix_ + "/embed";

  httplib::Client client(host_);
  const auto timeout = Seconds(spec_.timeout_seconds);
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);

  std::string last_error;
  double backoff = spec_.initial_backoff_seconds;
  for (int attempt = 1; attempt <= spec_.attempts; ++attempt) {
    auto response = client.Post(path, body, "application/json");
    if (!response) {
      last_error = "request to " + host_ + path + " failed: " + httplib::to_string(response.error());
    } else if (response->status >= 500) {
      last_error = "sidecar returned HTTP " + std::to_string(response->status) + ": " +
                   response->body;
    } else if (response->status != 200) {
      throw ProviderError("sidecar rejected request with HTTP " +
                          std::to_string(response->status) + ": " + response->body);
    } else {
      return ParseEmbedResponse(response->body, spec_.model, texts.size());
    }
    if (attempt < spec_.attempts) {
      std::this_thread::sleep_for(Seconds(backoff));
      backoff *= 2.0;
    }
  }
  throw ProviderError(last_error + " (gave up after " + std::to_string(spec_.attempts) +
                      " attempts)");
}

std::vector<EmbeddingVector> ParseEmbedResponse(const std::string& body,
                                                const std::string& model,
                                                std::size_t expected_count) {
  json response;
  try {
    response = json::parse(body);
  } catch (const json::parse_error& e) {
    throw ProviderError(std::string("sidecar response is not JSON: ") + e.what());
  }
  try {
    const auto echoed = response.at("model").get<std::string>();
    if (echoed != model) {
      throw ProviderError("sidecar answered for model '" + echoed + "', asked for '" + model + "'");
    }
    const auto dims = response.at("dims").get<std::size_t>();
    const auto& vectors = response.at("vectors");
    if (!vectors.is_array() || vectors.size() != expected_count) {
      throw ProviderError("sidecar returned " + std::to_string(vectors.size()) +
                          " vectors for " + std::to_string(expected_count) + " texts");
    }
    std::vector<EmbeddingVector> out;
    out.reserve(expected_count);
    for (const auto& item : vectors) {
      // Non-finite numbers cannot appear in JSON, but nulls can.
      EmbeddingVector vector(item.get<std::vector<double>>());
      if (vector.dims() != dims) {
        throw ProviderError("sidecar vector has " + std::to_string(vector.dims()) +
                            " dims, response declares " + std::to_string(dims));
      }
      out.push_back(std::move(vector));
    }
    return out;
  } catch (const json::exception& e) {
    throw ProviderError(std::string("malformed sidecar response: ") + e.what());
  } catch (const DomainError& e) {
    throw ProviderError(std::string("malformed sidecar response: ") + e.what());
  }
}

}  // namespace e2e_bench
