/* Copyright 2026 The picobench Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <thread>

#include "picobench/backends.h"
#include "picobench/error.h"

extern char** environ;

namespace picobench {
namespace {

using Clock = std::chrono::steady_clock;

void close_fd(int& fd) {
  if (fd >= 0) {
    ::close(fd);
    fd = -1;
  }
}

bool child_exited(int pid, int* status, std::chrono::milliseconds grace) {
  const auto until = Clock::now() + grace;
  do {
    const int r = ::waitpid(pid, status, WNOHANG);
    if (r == pid || (r < 0 && errno == ECHILD)) return true;
    std::this_thread::sleep_for(std::chrono::milliseconds(5));
  } while (Clock::now() < until);
  return false;
}

}  // namespace

SubprocessBackend::SubprocessBackend(const std::string& command,
                                     const std::vector<std::string>& args,
                                     int timeout_ms)
    : timeout_ms_(timeout_ms) {
  // A dead child must surface as BackendCrashed, not terminate the harness.
  ::signal(SIGPIPE, SIG_IGN);

  int in_pipe[2];
  int out_pipe[2];
  if (::pipe2(in_pipe, O_CLOEXEC) != 0) {
    throw Error(ErrorCode::kSpawnFailure, std::strerror(errno));
  }
  if (::pipe2(out_pipe, O_CLOEXEC) != 0) {
    ::close(in_pipe[0]);
    ::close(in_pipe[1]);
    throw Error(ErrorCode::kSpawnFailure, std::strerror(errno));
  }

  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_adddup2(&actions, in_pipe[0], STDIN_FILENO);
  posix_spawn_file_actions_adddup2(&actions, out_pipe[1], STDOUT_FILENO);

  std::vector<char*> argv;
  argv.push_back(const_cast<char*>(command.c_str()));
  for (const auto& a : args) argv.push_back(const_cast<char*>(a.c_str()));
  argv.push_back(nullptr);

  pid_t pid = -1;
  const int rc = ::posix_spawnp(&pid, command.c_str(), &actions, nullptr,
                                argv.data(), environ);
  posix_spawn_file_actions_destroy(&actions);
  ::close(in_pipe[0]);
  ::close(out_pipe[1]);
  if (rc != 0) {
    ::close(in_pipe[1]);
    ::close(out_pipe[0]);
    throw Error(ErrorCode::kSpawnFailure,
                "cannot start '" + command + "': " + std::strerror(rc));
  }
  pid_ = pid;
  to_child_ = in_pipe[1];
  from_child_ = out_pipe[0];

  try {
    send_line(wire::hello_message());
    auto reply = read_line(ErrorCode::kHandshakeTimeout);
    if (!reply) {
      throw Error(ErrorCode::kSpawnFailure,
                  "'" + command + "' exited before completing the handshake");
    }
    model_name_ = wire::parse_ready(*reply);
  } catch (...) {
    close();
    throw;
  }
}

SubprocessBackend::~SubprocessBackend() { close(); }

void SubprocessBackend::send_line(const std::string& line) {
  std::string framed = line + '\n';
  size_t off = 0;
  while (off < framed.size()) {
    const ssize_t n = ::write(to_child_, framed.data() + off, framed.size() - off);
    if (n < 0) {
      if (errno == EINTR) continue;
      broken_ = true;
      throw Error(ErrorCode::kBackendCrashed,
                  std::string("write to child failed: ") + std::strerror(errno));
    }
    off += static_cast<size_t>(n);
  }
}

std::optional<std::string> SubprocessBackend::read_line(ErrorCode on_timeout) {
  const auto deadline = Clock::now() + std::chrono::milliseconds(timeout_ms_);
  for (;;) {
    if (auto nl = buffer_.find('\n'); nl != std::string::npos) {
      std::string line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      return line;
    }
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - Clock::now());
    if (left.count() <= 0) {
      broken_ = true;
      throw Error(on_timeout, "no response within " +
                                  std::to_string(timeout_ms_) + " ms");
    }
    pollfd pfd{from_child_, POLLIN, 0};
    const int r = ::poll(&pfd, 1, static_cast<int>(left.count()) + 1);
    if (r < 0) {
      if (errno == EINTR) continue;
      throw Error(ErrorCode::kBackendCrashed, std::strerror(errno));
    }
    if (r == 0) continue;
    char chunk[4096];
    const ssize_t n = ::read(from_child_, chunk, sizeof(chunk));
    if (n < 0) {
      if (errno == EINTR || errno == EAGAIN) continue;
      throw Error(ErrorCode::kBackendCrashed, std::strerror(errno));
    }
    if (n == 0) return std::nullopt;
    buffer_.append(chunk, static_cast<size_t>(n));
  }
}

InferenceOutput SubprocessBackend::infer(const InputTensor& input) {
  if (pid_ < 0 || broken_) {
    throw Error(ErrorCode::kBackendCrashed, "child process is not available");
  }
  const uint64_t id = next_id_++;
  send_line(wire::infer_request(id, input));
  auto reply = read_line(ErrorCode::kBackendTimeout);
  if (!reply) {
    broken_ = true;
    throw Error(ErrorCode::kBackendCrashed,
                "child closed its output during request " + std::to_string(id));
  }
  try {
    return wire::parse_result(*reply, id);
  } catch (const Error&) {
    broken_ = true;
    throw;
  }
}

void SubprocessBackend::close() {
  if (pid_ < 0) return;
  if (to_child_ >= 0 && !broken_) {
    try {
      send_line(wire::shutdown_message());
    } catch (const Error&) {
    }
  }
  close_fd(to_child_);
  int status = 0;
  if (!child_exited(pid_, &status, std::chrono::seconds(2))) {
    ::kill(pid_, SIGKILL);
    ::waitpid(pid_, &status, 0);
  }
  close_fd(from_child_);
  pid_ = -1;
}

}  // namespace picobench
