// Copyright 2026 The geobench Authors
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


#include <spawn.h>
#include <sys/wait.h>

#include <cerrno>
#include <cstring>

#include "geobench/error.hpp"
#include "geobench/harness.hpp"

extern char** environ;

namespace geobench::harness {

void run_hook(const std::vector<std::string>& argv, const std::vector<std::string>& extra_args) {
  if (argv.empty()) throw ConfigError("hook command is empty");
  std::vector<std::string> args = argv;
  args.insert(args.end(), extra_args.begin(), extra_args.end());
  std::vector<char*> raw;
  for (auto& a : args) raw.push_back(a.data());
  raw.push_back(nullptr);

  pid_t pid = 0;
  if (const int rc = posix_spawnp(&pid, raw[0], nullptr, nullptr, raw.data(), environ); rc != 0) {
    throw HookFailure("cannot start hook '" + args[0] + "': " + std::strerror(rc));
  }
  int status = 0;
  while (waitpid(pid, &status, 0) < 0) {
    if (errno != EINTR) throw HookFailure("waiting for hook '" + args[0] + "': " + std::strerror(errno));
  }
  if (WIFEXITED(status) && WEXITSTATUS(status) == 0) return;
  if (WIFSIGNALED(status)) {
    throw HookFailure("hook '" + args[0] + "' killed by signal " + std::to_string(WTERMSIG(status)));
  }
  throw HookFailure("hook '" + args[0] + "' exited with status " + std::to_string(WEXITSTATUS(status)));
}

}  // namespace geobench::harness
