// Copyright 2026 The groundmem Authors
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

#include "groundmem/agents/executor.h"

#include <fcntl.h>
#include <poll.h>
#include <sched.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "groundmem/error.h"

namespace groundmem {
namespace fs = std::filesystem;

const char kPythonPreamble[] = R"PY(import json
import math
import sys

with open(sys.argv[1]) as _bindings_file:
    BINDINGS = json.load(_bindings_file)
MEMORY = BINDINGS.get("memory") or {}
INSTANCES = MEMORY.get("instances") or []
EGO = MEMORY.get("ego")


def instances(label=None):
    return [i for i in INSTANCES if label is None or i["label"] == label]


def instance(instance_id):
    for i in INSTANCES:
        if i["id"] == instance_id:
            return i
    raise KeyError("no instance with id %r" % (instance_id,))


def _box(x):
    if isinstance(x, int):
        x = instance(x)
    return x["box"] if "box" in x else x


def box_center(x):
    return list(_box(x)["center"])


def box_size(x):
    return list(_box(x)["size"])


def box_volume(x):
    l, w, h = box_size(x)
    return l * w * h


def box_distance(a, b):
    ca, cb = box_center(a), box_center(b)
    return math.sqrt(sum((p - q) ** 2 for p, q in zip(ca, cb)))


def _axes(facing):
    n = math.hypot(facing[0], facing[1])
    if n == 0:
        raise ValueError("facing direction has no horizontal component")
    front = (facing[0] / n, facing[1] / n)
    return front, (-front[1], front[0])


def direction(target, ego=None):
    """front / behind / left / right of `target` relative to the ego pose."""
    ego = ego or EGO
    if ego is None:
        raise ValueError("no ego pose in memory")
    front, lat = _axes(ego["facing"])
    c = box_center(target)
    d = (c[0] - ego["position"][0], c[1] - ego["position"][1])
    f = d[0] * front[0] + d[1] * front[1]
    s = d[0] * lat[0] + d[1] * lat[1]
    if abs(f) >= abs(s):
        return "front" if f >= 0 else "behind"
    return "left" if s > 0 else "right"


def count(label=None):
    return len(instances(label))


def emit(value):
    print(json.dumps(value))

)PY";

nlohmann::json ExecutionResult::ToJson() const {
  return {{"exit_status", exit_status},
          {"timed_out", timed_out},
          {"stdout", stdout_text},
          {"stderr", stderr_text}};
}

SubprocessExecutor::SubprocessExecutor(SubprocessConfig config) : config_(std::move(config)) {
  if (!(config_.timeout_s > 0.0)) throw InvalidArgumentError("executor timeout must be > 0");
  if (config_.interpreter.empty()) throw InvalidArgumentError("executor interpreter is empty");
}

namespace {

struct ScratchDir {
  fs::path path;
  ScratchDir() {
    std::string tmpl = (fs::temp_directory_path() / "groundmem-exec-XXXXXX").string();
    if (!mkdtemp(tmpl.data())) throw SessionError("cannot create executor scratch directory");
    path = tmpl;
  }
  ~ScratchDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

void WriteFile(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
  if (!out) throw SessionError("cannot write " + p.string());
}

[[noreturn]] void RunChild(const std::string& interpreter, const fs::path& dir, int out_fd,
                           int err_fd) {
  setpgid(0, 0);
  dup2(out_fd, STDOUT_FILENO);
  dup2(err_fd, STDERR_FILENO);
  const int devnull = open("/dev/null", O_RDONLY);
  if (devnull >= 0) dup2(devnull, STDIN_FILENO);
  if (chdir(dir.c_str()) != 0) _exit(126);
  // Best effort: succeeds where user or network namespaces are permitted.
  (void)unshare(CLONE_NEWNET);
  clearenv();
  setenv("PATH", "/usr/local/bin:/usr/bin:/bin", 1);
  setenv("HOME", dir.c_str(), 1);
  setenv("TMPDIR", dir.c_str(), 1);
  setenv("PYTHONHASHSEED", "0", 1);
  setenv("PYTHONDONTWRITEBYTECODE", "1", 1);
  setenv("LC_ALL", "C.UTF-8", 1);
  for (const char* var : {"http_proxy", "https_proxy", "HTTP_PROXY", "HTTPS_PROXY"}) {
    setenv(var, "http://127.0.0.1:9", 1);
  }
  const char* argv[] = {interpreter.c_str(), "program.py", "bindings.json", nullptr};
  execvp(interpreter.c_str(), const_cast<char* const*>(argv));
  _exit(127);
}

}  // namespace

ExecutionResult SubprocessExecutor::Run(const std::string& source,
                                        const nlohmann::json& bindings) {
  ScratchDir scratch;
  WriteFile(scratch.path / "program.py",
            config_.with_preamble ? std::string(kPythonPreamble) + source : source);
  WriteFile(scratch.path / "bindings.json", bindings.dump());

  int out_pipe[2], err_pipe[2];
  if (pipe2(out_pipe, O_CLOEXEC) != 0) throw SessionError("pipe failed");
  if (pipe2(err_pipe, O_CLOEXEC) != 0) {
    close(out_pipe[0]);
    close(out_pipe[1]);
    throw SessionError("pipe failed");
  }
  const pid_t pid = fork();
  if (pid < 0) {
    for (int fd : {out_pipe[0], out_pipe[1], err_pipe[0], err_pipe[1]}) close(fd);
    throw SessionError("fork failed");
  }
  if (pid == 0) RunChild(config_.interpreter, scratch.path, out_pipe[1], err_pipe[1]);
  setpgid(pid, pid);
  close(out_pipe[1]);
  close(err_pipe[1]);

  ExecutionResult result;
  std::array<std::string*, 2> sinks = {&result.stdout_text, &result.stderr_text};
  std::array<pollfd, 2> fds = {pollfd{out_pipe[0], POLLIN, 0}, pollfd{err_pipe[0], POLLIN, 0}};
  const auto deadline = std::chrono::steady_clock::now() +
                        std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                            std::chrono::duration<double>(config_.timeout_s));
  int open_fds = 2;
  char buf[4096];
  while (open_fds > 0) {
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0) {
      result.timed_out = true;
      break;
    }
    const int ready = poll(fds.data(), fds.size(), static_cast<int>(left.count()));
    if (ready < 0) {
      if (errno == EINTR) continue;
      break;
    }
    for (size_t i = 0; i < fds.size(); ++i) {
      if (fds[i].fd < 0 || !(fds[i].revents & (POLLIN | POLLHUP | POLLERR))) continue;
      const ssize_t n = read(fds[i].fd, buf, sizeof(buf));
      if (n > 0) {
        const size_t room = config_.max_output_bytes - std::min(config_.max_output_bytes,
                                                                sinks[i]->size());
        sinks[i]->append(buf, std::min(room, static_cast<size_t>(n)));
      } else if (n == 0 || errno != EINTR) {
        close(fds[i].fd);
        fds[i].fd = -1;
        --open_fds;
      }
    }
  }
  if (result.timed_out) kill(-pid, SIGKILL);
  for (const pollfd& p : fds) {
    if (p.fd >= 0) close(p.fd);
  }

  int status = 0;
  while (waitpid(pid, &status, 0) < 0 && errno == EINTR) {
  }
  if (WIFEXITED(status)) {
    result.exit_status = WEXITSTATUS(status);
  } else if (WIFSIGNALED(status)) {
    result.exit_status = 128 + WTERMSIG(status);
  }
  if (result.timed_out) {
    result.stderr_text += "timed out after " + std::to_string(config_.timeout_s) + " s\n";
  } else if (result.exit_status == 127) {
    result.stderr_text += "cannot execute interpreter '" + config_.interpreter + "'\n";
  }
  return result;
}

}  // namespace groundmem
