// Copyright 2026 The eamt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "eamt/wikidata_client.h"

#include <cstdlib>

#include "eamt/error.h"
#include "httplib.h"
#include "jsonl.h"
#include "url.h"

#ifndef EAMT_VERSION_STRING
#define EAMT_VERSION_STRING "dev"
#endif

namespace eamt {
namespace {

std::string JoinPipe(std::span<const std::string> items) {
  std::string out;
  for (const std::string& s : items) {
    if (!out.empty()) out += '|';
    out += s;
  }
  return out;
}

}  // namespace

std::string DefaultUserAgent() {
  std::string ua = "eamt/" EAMT_VERSION_STRING;
  if (const char* contact = std::getenv(kUserAgentEnv); contact != nullptr && *contact) {
    ua += " (";
    ua += contact;
    ua += ")";
  }
  return ua;
}

std::string WbGetEntitiesQuery(std::span<const std::string> ids,
                               std::span<const std::string> languages) {
  using internal::PercentEncode;
  return "action=wbgetentities&ids=" + PercentEncode(JoinPipe(ids)) +
         "&props=" + PercentEncode("labels|aliases") +
         "&languages=" + PercentEncode(JoinPipe(languages)) + "&format=json";
}

HttpWikidataTransport::HttpWikidataTransport(WikidataClientConfig config)
    : config_(std::move(config)), limiter_(config_.requests_per_second) {
  internal::ParseUrl(config_.endpoint);  // validate eagerly
  if (config_.user_agent.empty()) config_.user_agent = DefaultUserAgent();
  if (!config_.sleep) config_.sleep = RealSleep();
}

HttpWikidataTransport::~HttpWikidataTransport() = default;

std::string HttpWikidataTransport::FetchEntities(std::span<const std::string> ids,
                                                 std::span<const std::string> languages) {
  const internal::ParsedUrl url = internal::ParseUrl(config_.endpoint);
  const std::string target = url.path + "?" + WbGetEntitiesQuery(ids, languages);

  httplib::Client client(url.origin);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(config_.timeout);
  const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(config_.timeout - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_follow_location(true);
  httplib::Headers headers = {{"User-Agent", config_.user_agent},
                              {"Accept", "application/json"}};

  Backoff backoff(config_.retry, seed_++);
  std::string last_error;
  for (int attempt = 0; attempt <= config_.retry.max_retries; ++attempt) {
    if (attempt > 0) config_.sleep(backoff.Next());
    limiter_.Acquire();
    auto res = client.Get(target, headers);
    if (!res) {
      last_error = "transport error: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status == 200) return res->body;
    last_error = "HTTP " + std::to_string(res->status);
    if (!IsRetryableStatus(res->status)) break;
  }
  throw Error(ErrorCode::kNetwork, "wbgetentities failed for " + JoinPipe(ids) + ": " + last_error);
}

FixtureWikidataTransport::FixtureWikidataTransport(std::filesystem::path dir)
    : dir_(std::move(dir)) {
  if (!std::filesystem::is_directory(dir_)) {
    throw Error(ErrorCode::kConfig, "fixture directory not found: " + dir_.string());
  }
}

std::string FixtureWikidataTransport::FetchEntities(std::span<const std::string> ids,
                                                    std::span<const std::string>) {
  using internal::Json;
  Json entities = Json::object();
  for (const std::string& qid : ids) {
    const std::filesystem::path file = dir_ / (qid + ".json");
    if (!std::filesystem::exists(file)) {
      entities[qid] = Json{{"id", qid}, {"missing", ""}};
      continue;
    }
    Json doc;
    try {
      doc = Json::parse(internal::ReadFile(file));
    } catch (const Json::parse_error& e) {
      throw Error(ErrorCode::kParse, file.string() + ": malformed fixture: " + e.what());
    }
    if (doc.contains("entities")) {
      const Json& inner = doc["entities"];
      entities[qid] = inner.contains(qid) ? inner[qid] : Json{{"id", qid}, {"missing", ""}};
    } else {
      entities[qid] = std::move(doc);
    }
  }
  Json body;
  body["entities"] = std::move(entities);
  body["success"] = 1;
  return body.dump();
}

}  // namespace eamt
