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

#ifndef EAMT_WIKIDATA_CLIENT_H_
#define EAMT_WIKIDATA_CLIENT_H_

#include <atomic>
#include <chrono>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "eamt/lexicon.h"
#include "eamt/retry.h"

namespace eamt {

// Fetches one wbgetentities batch (props=labels|aliases). Implementations
// must be safe to call from several threads at once.
class WikidataTransport {
 public:
  virtual ~WikidataTransport() = default;

  // Returns the JSON response body. Throws Error(kNetwork) when the batch
  // could not be fetched after the transport's own retries.
  virtual std::string FetchEntities(std::span<const std::string> ids,
                                    std::span<const std::string> languages) = 0;

  virtual LexiconSource source() const = 0;
};

inline constexpr char kDefaultWikidataEndpoint[] =
    "https://www.wikidata.org/w/api.php";
// Environment variable holding the contact part of the User-Agent.
inline constexpr char kUserAgentEnv[] = "EAMT_USER_AGENT";

struct WikidataClientConfig {
  std::string endpoint = kDefaultWikidataEndpoint;
  double requests_per_second = 5.0;
  std::chrono::milliseconds timeout{30000};
  std::string user_agent;  // empty: built from kUserAgentEnv
  RetryPolicy retry;
  SleepFn sleep;  // defaults to RealSleep()
};

// Builds "eamt/<version> (<contact>)" with contact from EAMT_USER_AGENT.
std::string DefaultUserAgent();

// Builds the query string for one batch (without the leading '?').
std::string WbGetEntitiesQuery(std::span<const std::string> ids,
                               std::span<const std::string> languages);

class HttpWikidataTransport : public WikidataTransport {
 public:
  explicit HttpWikidataTransport(WikidataClientConfig config);
  ~HttpWikidataTransport() override;

  std::string FetchEntities(std::span<const std::string> ids,
                            std::span<const std::string> languages) override;
  LexiconSource source() const override { return LexiconSource::kApi; }

 private:
  WikidataClientConfig config_;
  RateLimiter limiter_;
  std::atomic<uint64_t> seed_{1};
};

// Offline mode. The fixture directory holds one `<QID>.json` per entity,
// either a full wbgetentities body or the bare entity object. A missing
// file answers as Wikidata does for unknown ids ({"missing": ""}).
class FixtureWikidataTransport : public WikidataTransport {
 public:
  explicit FixtureWikidataTransport(std::filesystem::path dir);

  std::string FetchEntities(std::span<const std::string> ids,
                            std::span<const std::string> languages) override;
  LexiconSource source() const override { return LexiconSource::kFile; }

 private:
  std::filesystem::path dir_;
};

}  // namespace eamt

#endif  // EAMT_WIKIDATA_CLIENT_H_
