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

#ifndef EAMT_SCORER_CLIENT_H_
#define EAMT_SCORER_CLIENT_H_

#include <chrono>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace eamt {

// Newline-delimited JSON scoring protocol. The scorer first emits
//   {"protocol":"eamt-scorer/1","metric":"<id>", ...}
// then answers each request line {"id","src","mt","ref"} with
// {"id","score"} (score in [0,1]) or {"id":...,"error":"..."}.
inline constexpr char kScorerProtocol[] = "eamt-scorer/1";

struct ScoreRequest {
  std::string id;
  std::string source;
  std::string hypothesis;
  std::string reference;
};

struct ItemScore {
  std::optional<double> score;
  std::string error;  // non-empty iff !score

  bool ok() const { return score.has_value(); }
};

struct ScorerHandshake {
  std::string protocol;
  std::string metric;
  bool clamped = false;
};

// A bidirectional line channel to one scorer.
class LineChannel {
 public:
  virtual ~LineChannel() = default;
  virtual void WriteLine(std::string_view line) = 0;
  // nullopt on EOF or timeout.
  virtual std::optional<std::string> ReadLine() = 0;
};

// Spawns `argv` with its stdin/stdout as the channel. Throws
// Error(kUnavailable) if it cannot be started.
std::unique_ptr<LineChannel> SpawnScorer(const std::vector<std::string>& argv,
                                         std::chrono::milliseconds timeout);

// Connects to a scorer listening on host:port. Throws Error(kUnavailable).
std::unique_ptr<LineChannel> ConnectScorer(const std::string& host, int port,
                                           std::chrono::milliseconds timeout);

// Where to find the scorer: "cmd:<shell words>" or "tcp:<host>:<port>".
struct ScorerEndpoint {
  enum class Kind { kSubprocess, kTcp } kind = Kind::kSubprocess;
  std::vector<std::string> argv;
  std::string host;
  int port = 0;
  std::chrono::milliseconds timeout{120000};

  static ScorerEndpoint Parse(std::string_view spec);
  std::unique_ptr<LineChannel> Open() const;
};

// Reads and checks the handshake. Throws Error(kProtocol).
ScorerHandshake ReadHandshake(LineChannel& channel);

struct ExternalScores {
  ScorerHandshake handshake;
  // Keyed by request id; every request id is present.
  std::map<std::string, ItemScore> scores;
};

// Scores the batch over an open channel, one request at a time. Item-level
// protocol violations become item errors; scoring continues.
ExternalScores ScoreOverChannel(std::span<const ScoreRequest> batch, LineChannel& channel);

// Opens the endpoint and scores. An empty batch never contacts the
// scorer. Throws Error(kUnavailable) (mentioning the chrf fallback) when
// the scorer cannot be reached or closes before the handshake.
ExternalScores ExternalScore(std::span<const ScoreRequest> batch,
                             const ScorerEndpoint& endpoint);

}  // namespace eamt

#endif  // EAMT_SCORER_CLIENT_H_
