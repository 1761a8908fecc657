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

#include "eamt/scorer_client.h"

#include <fcntl.h>
#include <netdb.h>
#include <poll.h>
#include <signal.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <set>
#include <thread>

#include "eamt/error.h"
#include "jsonl.h"

namespace eamt {
namespace {

using internal::Json;

constexpr char kFallbackHint[] = " (use --scorer chrf for the built-in quality metric)";

// Buffered line reader over a file descriptor with a poll() timeout.
class FdLineReader {
 public:
  FdLineReader(int fd, std::chrono::milliseconds timeout) : fd_(fd), timeout_(timeout) {}

  std::optional<std::string> ReadLine() {
    while (true) {
      if (size_t nl = buf_.find('\n'); nl != std::string::npos) {
        std::string line = buf_.substr(0, nl);
        buf_.erase(0, nl + 1);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return line;
      }
      if (eof_) {
        if (buf_.empty()) return std::nullopt;
        std::string line = std::move(buf_);
        buf_.clear();
        return line;
      }
      pollfd p{fd_, POLLIN, 0};
      int rc = ::poll(&p, 1, static_cast<int>(timeout_.count()));
      if (rc < 0 && errno == EINTR) continue;
      if (rc <= 0) return std::nullopt;  // timeout or error
      char chunk[4096];
      ssize_t n = ::read(fd_, chunk, sizeof chunk);
      if (n < 0 && errno == EINTR) continue;
      if (n <= 0) {
        eof_ = true;
        continue;
      }
      buf_.append(chunk, static_cast<size_t>(n));
    }
  }

 private:
  int fd_;
  std::chrono::milliseconds timeout_;
  std::string buf_;
  bool eof_ = false;
};

bool WriteAll(int fd, std::string_view data, bool is_socket) {
  while (!data.empty()) {
    ssize_t n = is_socket ? ::send(fd, data.data(), data.size(), MSG_NOSIGNAL)
                          : ::write(fd, data.data(), data.size());
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) return false;
    data.remove_prefix(static_cast<size_t>(n));
  }
  return true;
}

class SubprocessChannel : public LineChannel {
 public:
  SubprocessChannel(pid_t pid, int to_child, int from_child, std::chrono::milliseconds timeout)
      : pid_(pid), to_child_(to_child), from_child_(from_child), reader_(from_child, timeout) {}

  ~SubprocessChannel() override {
    if (to_child_ >= 0) ::close(to_child_);
    // EOF on stdin ends a conforming scorer; give it a moment, then kill.
    for (int i = 0; i < 100; ++i) {
      int status = 0;
      pid_t r = ::waitpid(pid_, &status, WNOHANG);
      if (r == pid_ || r < 0) {
        ::close(from_child_);
        return;
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(20));
    }
    ::kill(pid_, SIGKILL);
    ::waitpid(pid_, nullptr, 0);
    ::close(from_child_);
  }

  void WriteLine(std::string_view line) override {
    std::string buf(line);
    buf += '\n';
    if (to_child_ < 0 || !WriteAll(to_child_, buf, false)) {
      throw Error(ErrorCode::kProtocol, "scorer closed its input");
    }
  }

  std::optional<std::string> ReadLine() override { return reader_.ReadLine(); }

 private:
  pid_t pid_;
  int to_child_;
  int from_child_;
  FdLineReader reader_;
};

class SocketChannel : public LineChannel {
 public:
  SocketChannel(int fd, std::chrono::milliseconds timeout) : fd_(fd), reader_(fd, timeout) {}
  ~SocketChannel() override { ::close(fd_); }

  void WriteLine(std::string_view line) override {
    std::string buf(line);
    buf += '\n';
    if (!WriteAll(fd_, buf, true)) throw Error(ErrorCode::kProtocol, "scorer closed the socket");
  }

  std::optional<std::string> ReadLine() override { return reader_.ReadLine(); }

 private:
  int fd_;
  FdLineReader reader_;
};

std::vector<std::string> SplitWords(std::string_view text) {
  std::vector<std::string> words;
  std::string cur;
  bool in_word = false;
  char quote = 0;
  for (char c : text) {
    if (quote) {
      if (c == quote) {
        quote = 0;
      } else {
        cur.push_back(c);
      }
    } else if (c == '"' || c == '\'') {
      quote = c;
      in_word = true;
    } else if (c == ' ' || c == '\t') {
      if (in_word) words.push_back(std::move(cur));
      cur.clear();
      in_word = false;
    } else {
      cur.push_back(c);
      in_word = true;
    }
  }
  if (in_word) words.push_back(std::move(cur));
  return words;
}

}  // namespace

std::unique_ptr<LineChannel> SpawnScorer(const std::vector<std::string>& argv,
                                         std::chrono::milliseconds timeout) {
  if (argv.empty()) throw Error(ErrorCode::kConfig, "scorer command is empty");
  ::signal(SIGPIPE, SIG_IGN);

  int in_pipe[2], out_pipe[2], status_pipe[2];
  if (::pipe2(in_pipe, O_CLOEXEC) != 0 || ::pipe2(out_pipe, O_CLOEXEC) != 0 ||
      ::pipe2(status_pipe, O_CLOEXEC) != 0) {
    throw Error(ErrorCode::kUnavailable, std::string("pipe: ") + std::strerror(errno));
  }
  std::vector<char*> cargv;
  for (const std::string& a : argv) cargv.push_back(const_cast<char*>(a.c_str()));
  cargv.push_back(nullptr);

  pid_t pid = ::fork();
  if (pid < 0) {
    throw Error(ErrorCode::kUnavailable, std::string("fork: ") + std::strerror(errno));
  }
  if (pid == 0) {
    ::dup2(in_pipe[0], STDIN_FILENO);
    ::dup2(out_pipe[1], STDOUT_FILENO);
    ::execvp(cargv[0], cargv.data());
    int err = errno;
    [[maybe_unused]] ssize_t ignored = ::write(status_pipe[1], &err, sizeof err);
    ::_exit(127);
  }
  ::close(in_pipe[0]);
  ::close(out_pipe[1]);
  ::close(status_pipe[1]);
  int child_errno = 0;
  ssize_t n;
  do {
    n = ::read(status_pipe[0], &child_errno, sizeof child_errno);
  } while (n < 0 && errno == EINTR);
  ::close(status_pipe[0]);
  if (n == sizeof child_errno) {
    ::close(in_pipe[1]);
    ::close(out_pipe[0]);
    ::waitpid(pid, nullptr, 0);
    throw Error(ErrorCode::kUnavailable, "cannot start scorer '" + argv[0] +
                                             "': " + std::strerror(child_errno) + kFallbackHint);
  }
  return std::make_unique<SubprocessChannel>(pid, in_pipe[1], out_pipe[0], timeout);
}

std::unique_ptr<LineChannel> ConnectScorer(const std::string& host, int port,
                                           std::chrono::milliseconds timeout) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  const std::string port_str = std::to_string(port);
  if (int rc = ::getaddrinfo(host.c_str(), port_str.c_str(), &hints, &res); rc != 0) {
    throw Error(ErrorCode::kUnavailable,
                "cannot resolve scorer host '" + host + "': " + ::gai_strerror(rc) + kFallbackHint);
  }
  int fd = -1;
  for (addrinfo* ai = res; ai != nullptr; ai = ai->ai_next) {
    fd = ::socket(ai->ai_family, ai->ai_socktype | SOCK_CLOEXEC, ai->ai_protocol);
    if (fd < 0) continue;
    if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) break;
    ::close(fd);
    fd = -1;
  }
  ::freeaddrinfo(res);
  if (fd < 0) {
    throw Error(ErrorCode::kUnavailable, "cannot connect to scorer at " + host + ":" + port_str +
                                             kFallbackHint);
  }
  return std::make_unique<SocketChannel>(fd, timeout);
}

ScorerEndpoint ScorerEndpoint::Parse(std::string_view spec) {
  ScorerEndpoint ep;
  if (spec.starts_with("cmd:")) {
    ep.kind = Kind::kSubprocess;
    ep.argv = SplitWords(spec.substr(4));
    if (ep.argv.empty()) throw Error(ErrorCode::kConfig, "scorer command is empty");
    return ep;
  }
  if (spec.starts_with("tcp:")) {
    std::string_view rest = spec.substr(4);
    size_t colon = rest.rfind(':');
    if (colon == std::string_view::npos || colon == 0) {
      throw Error(ErrorCode::kConfig, "expected tcp:<host>:<port>, got '" + std::string(spec) + "'");
    }
    ep.kind = Kind::kTcp;
    ep.host = std::string(rest.substr(0, colon));
    try {
      ep.port = std::stoi(std::string(rest.substr(colon + 1)));
    } catch (const std::exception&) {
      throw Error(ErrorCode::kConfig, "bad scorer port in '" + std::string(spec) + "'");
    }
    if (ep.port <= 0 || ep.port > 65535) {
      throw Error(ErrorCode::kConfig, "bad scorer port in '" + std::string(spec) + "'");
    }
    return ep;
  }
  throw Error(ErrorCode::kConfig,
              "scorer must be 'chrf', 'cmd:<command>' or 'tcp:<host>:<port>', got '" +
                  std::string(spec) + "'");
}

std::unique_ptr<LineChannel> ScorerEndpoint::Open() const {
  if (kind == Kind::kTcp) return ConnectScorer(host, port, timeout);
  return SpawnScorer(argv, timeout);
}

ScorerHandshake ReadHandshake(LineChannel& channel) {
  std::optional<std::string> line = channel.ReadLine();
  if (!line) {
    throw Error(ErrorCode::kUnavailable,
                std::string("scorer exited or timed out before its handshake") + kFallbackHint);
  }
  ScorerHandshake hs;
  try {
    Json j = Json::parse(*line);
    hs.protocol = j.at("protocol").get<std::string>();
    hs.metric = j.value("metric", std::string());
    hs.clamped = j.value("clamped", false);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kProtocol, "bad scorer handshake '" + *line + "': " + e.what());
  }
  if (hs.protocol != kScorerProtocol) {
    throw Error(ErrorCode::kProtocol, "unsupported scorer protocol '" + hs.protocol +
                                          "' (expected " + kScorerProtocol + ")");
  }
  return hs;
}

ExternalScores ScoreOverChannel(std::span<const ScoreRequest> batch, LineChannel& channel) {
  std::set<std::string_view> seen;
  for (const ScoreRequest& req : batch) {
    if (!seen.insert(req.id).second) {
      throw Error(ErrorCode::kValidation, "duplicate id in scoring batch: " + req.id);
    }
  }
  ExternalScores out;
  out.handshake = ReadHandshake(channel);
  bool dead = false;
  for (const ScoreRequest& req : batch) {
    ItemScore& item = out.scores[req.id];
    if (dead) {
      item.error = "scorer connection lost";
      continue;
    }
    Json j;
    j["id"] = req.id;
    j["src"] = req.source;
    j["mt"] = req.hypothesis;
    j["ref"] = req.reference;
    std::optional<std::string> line;
    try {
      channel.WriteLine(j.dump());
      line = channel.ReadLine();
    } catch (const Error& e) {
      line.reset();
    }
    if (!line) {
      dead = true;
      item.error = "scorer connection lost";
      continue;
    }
    Json resp;
    try {
      resp = Json::parse(*line);
    } catch (const Json::parse_error&) {
      item.error = "malformed response line '" + *line + "'";
      continue;
    }
    if (!resp.is_object()) {
      item.error = "response is not an object";
      continue;
    }
    if (resp.contains("error")) {
      item.error = "scorer error: " + resp["error"].dump();
      continue;
    }
    if (!resp.contains("id") || !resp["id"].is_string() || resp["id"].get<std::string>() != req.id) {
      item.error = "response id " + (resp.contains("id") ? resp["id"].dump() : "<missing>") +
                   " does not echo request id \"" + req.id + "\"";
      continue;
    }
    if (!resp.contains("score") || !resp["score"].is_number()) {
      item.error = "response has no numeric score";
      continue;
    }
    const double score = resp["score"].get<double>();
    if (!(score >= 0.0 && score <= 1.0)) {
      item.error = "score " + resp["score"].dump() + " is outside [0, 1]";
      continue;
    }
    item.score = score;
  }
  return out;
}

ExternalScores ExternalScore(std::span<const ScoreRequest> batch, const ScorerEndpoint& endpoint) {
  if (batch.empty()) return {};
  std::unique_ptr<LineChannel> channel = endpoint.Open();
  return ScoreOverChannel(batch, *channel);
}

}  // namespace eamt
