// Copyright 2026 The VPE Authors
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

#include <fcntl.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <string>

#include "vpe/error.hpp"
#include "vpe/remote.hpp"

namespace vpe::remote {

namespace {

constexpr const char* kListeningPrefix = "listening on ";

int decode_status(int status) {
  if (WIFEXITED(status)) return WEXITSTATUS(status);
  if (WIFSIGNALED(status)) return 128 + WTERMSIG(status);
  return -1;
}

}  // namespace

WorkerProcess::WorkerProcess(const std::filesystem::path& executable,
                             std::vector<std::string> extra_args) {
  int fds[2];
  if (::pipe(fds) != 0) throw Error(Errc::Transport, std::string("pipe: ") + std::strerror(errno));

  std::vector<std::string> argv_store{executable.string(), "--listen", "127.0.0.1:0"};
  for (auto& a : extra_args) argv_store.push_back(std::move(a));
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  argv.push_back(nullptr);

  pid_ = ::fork();
  if (pid_ < 0) {
    ::close(fds[0]);
    ::close(fds[1]);
    throw Error(Errc::Transport, std::string("fork: ") + std::strerror(errno));
  }
  if (pid_ == 0) {
    ::dup2(fds[1], STDOUT_FILENO);
    ::close(fds[0]);
    ::close(fds[1]);
    ::execv(argv[0], argv.data());
    ::_exit(127);
  }
  ::close(fds[1]);

  // Read the first stdout line; the worker prints it once the port is bound.
  std::string line;
  char c = 0;
  for (;;) {
    const ssize_t n = ::read(fds[0], &c, 1);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0 || c == '\n') break;
    line.push_back(c);
  }
  ::close(fds[0]);

  const auto pos = line.find(kListeningPrefix);
  if (pos == std::string::npos) {
    const int code = wait();
    throw Error(Errc::Transport, "worker " + executable.string() + " did not start (exit status " +
                                     std::to_string(code) + ")");
  }
  try {
    endpoint_ = net::parse_endpoint(line.substr(pos + std::strlen(kListeningPrefix)));
  } catch (const Error&) {
    ::kill(pid_, SIGTERM);
    wait();
    throw Error(Errc::Transport, "unexpected worker banner: " + line);
  }
}

WorkerProcess::~WorkerProcess() {
  if (pid_ > 0 && !exit_status_) {
    ::kill(pid_, SIGTERM);
    wait();
  }
}

int WorkerProcess::wait() {
  if (exit_status_) return *exit_status_;
  int status = 0;
  while (::waitpid(pid_, &status, 0) < 0) {
    if (errno != EINTR) {
      exit_status_ = -1;
      return -1;
    }
  }
  exit_status_ = decode_status(status);
  return *exit_status_;
}

}  // namespace vpe::remote
