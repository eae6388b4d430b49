// Copyright 2026 The kareldbg Authors.
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

// CandidateSource backed by a child process speaking newline-delimited JSON
// on stdin/stdout.
//
//   request:  {"op":"synthesize"|"debug","beam":B,"spec":[{"input":W,
//              "output":W},...],"program":"<tokens>","alignment":{"edges":
//              [[u,t,i],...]}}        (program and alignment on debug only)
//   response: {"candidates":["<tokens>",...]}  or  {"error":"..."}
//
// One response line per request line, in order.

#ifndef KAREL_PLUGIN_HPP_
#define KAREL_PLUGIN_HPP_

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <stdexcept>
#include <string>
#include <vector>

#include "karel/interpreter.hpp"
#include "karel/parser.hpp"
#include "karel/search.hpp"
#include "karel/tracemap.hpp"

namespace karel {

class PluginCrash : public std::runtime_error {
 public:
  explicit PluginCrash(const std::string& what)
      : std::runtime_error("plugin failure: " + what) {}
};

inline Json make_plugin_request(std::string_view op, int beam, const Spec& spec,
                                const TokenSeq* program, int step_limit) {
  Json req;
  req["op"] = std::string(op);
  req["beam"] = beam;
  req["spec"] = spec_to_json(spec);
  if (program) {
    req["program"] = detokenize(*program);
    if (auto ast = try_parse(*program)) {
      req["alignment"] = alignment_to_json(align_on_spec(*ast, spec, step_limit));
    }
  }
  return req;
}

// Parses a response line. Candidates that are not valid token text are
// dropped and counted.
inline std::vector<TokenSeq> parse_plugin_response(const std::string& line,
                                                   int* dropped = nullptr,
                                                   std::string* error = nullptr) {
  const Json j = Json::parse(line);
  std::vector<TokenSeq> out;
  if (j.contains("error")) {
    if (error) *error = j.at("error").dump();
    return out;
  }
  for (const auto& c : j.at("candidates")) {
    try {
      out.push_back(tokenize(c.get<std::string>()));
    } catch (const std::exception&) {
      if (dropped) ++*dropped;
    }
  }
  return out;
}

class ExternalSource : public CandidateSource {
 public:
  ExternalSource(std::string command, int beam,
                 int step_limit = kDefaultStepLimit,
                 std::chrono::milliseconds timeout = std::chrono::seconds(30))
      : command_(std::move(command)),
        beam_(beam),
        step_limit_(step_limit),
        timeout_(timeout) {
    start();
  }

  ~ExternalSource() override { stop(); }

  ExternalSource(const ExternalSource&) = delete;
  ExternalSource& operator=(const ExternalSource&) = delete;

  std::vector<TokenSeq> synthesize(const Spec& spec) override {
    return call(make_plugin_request("synthesize", beam_, spec, nullptr, step_limit_));
  }

  std::vector<TokenSeq> debug(const TokenSeq& program,
                              const Spec& spec) override {
    return call(make_plugin_request("debug", beam_, spec, &program, step_limit_));
  }

  int beam() const override { return beam_; }

  int restarts() const { return restarts_; }
  int dropped_candidates() const { return dropped_; }
  int error_responses() const { return errors_; }

 private:
  std::vector<TokenSeq> call(const Json& request) {
    const std::string line = request.dump() + "\n";
    for (int attempt = 0; attempt < 2; ++attempt) {
      if (pid_ < 0) start();
      std::string response;
      if (write_all(line) && read_line(response)) {
        try {
          std::string err;
          auto out = parse_plugin_response(response, &dropped_, &err);
          if (!err.empty()) ++errors_;
          return out;
        } catch (const std::exception&) {
          // unparseable response: treat like a crash
        }
      }
      stop();
      if (attempt == 0) ++restarts_;
    }
    throw PluginCrash("'" + command_ + "' failed twice on one request");
  }

  void start() {
    ::signal(SIGPIPE, SIG_IGN);
    int to_child[2], from_child[2];
    if (::pipe(to_child) != 0 || ::pipe(from_child) != 0) {
      throw PluginCrash("pipe() failed");
    }
    const pid_t pid = ::fork();
    if (pid < 0) throw PluginCrash("fork() failed");
    if (pid == 0) {
      ::dup2(to_child[0], STDIN_FILENO);
      ::dup2(from_child[1], STDOUT_FILENO);
      ::close(to_child[0]);
      ::close(to_child[1]);
      ::close(from_child[0]);
      ::close(from_child[1]);
      ::execl("/bin/sh", "sh", "-c", command_.c_str(), static_cast<char*>(nullptr));
      ::_exit(127);
    }
    ::close(to_child[0]);
    ::close(from_child[1]);
    pid_ = pid;
    in_fd_ = to_child[1];
    out_fd_ = from_child[0];
    buffer_.clear();
  }

  void stop() {
    if (in_fd_ >= 0) ::close(in_fd_);
    if (out_fd_ >= 0) ::close(out_fd_);
    in_fd_ = out_fd_ = -1;
    if (pid_ > 0) {
      ::kill(pid_, SIGTERM);
      ::waitpid(pid_, nullptr, 0);
    }
    pid_ = -1;
  }

  bool write_all(const std::string& s) {
    std::size_t off = 0;
    while (off < s.size()) {
      const ssize_t n = ::write(in_fd_, s.data() + off, s.size() - off);
      if (n < 0 && errno == EINTR) continue;
      if (n <= 0) return false;
      off += static_cast<std::size_t>(n);
    }
    return true;
  }

  bool read_line(std::string& line) {
    const auto deadline = std::chrono::steady_clock::now() + timeout_;
    while (true) {
      if (auto nl = buffer_.find('\n'); nl != std::string::npos) {
        line = buffer_.substr(0, nl);
        buffer_.erase(0, nl + 1);
        return true;
      }
      const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
          deadline - std::chrono::steady_clock::now());
      if (left.count() <= 0) return false;
      pollfd pfd{out_fd_, POLLIN, 0};
      const int r = ::poll(&pfd, 1, static_cast<int>(left.count()));
      if (r < 0 && errno == EINTR) continue;
      if (r <= 0) return false;
      char chunk[4096];
      const ssize_t n = ::read(out_fd_, chunk, sizeof chunk);
      if (n < 0 && errno == EINTR) continue;
      if (n <= 0) return false;
      buffer_.append(chunk, static_cast<std::size_t>(n));
    }
  }

  std::string command_;
  int beam_;
  int step_limit_;
  std::chrono::milliseconds timeout_;
  pid_t pid_ = -1;
  int in_fd_ = -1;
  int out_fd_ = -1;
  std::string buffer_;
  int restarts_ = 0;
  int dropped_ = 0;
  int errors_ = 0;
};

}  // namespace karel

#endif  // KAREL_PLUGIN_HPP_
