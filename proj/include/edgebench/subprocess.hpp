// Copyright 2026 The edgebench Authors.
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

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <sys/types.h>
#include <vector>

namespace edgebench {

/// A child process with piped stdin/stdout; stderr is inherited. POSIX only.
class Subprocess {
 public:
  /// Throws Error(kRunnerLaunchFailure) if the program cannot be executed.
  explicit Subprocess(const std::vector<std::string>& argv);
  ~Subprocess();

  Subprocess(const Subprocess&) = delete;
  Subprocess& operator=(const Subprocess&) = delete;

  /// Writes `line` plus '\n'. Returns false if the child closed its stdin.
  bool write_line(std::string_view line);

  /// Next line from the child's stdout without the newline; nullopt on EOF.
  /// A positive timeout throws Error(kProtocolViolation) when exceeded.
  std::optional<std::string> read_line(double timeout_s = 0.0);

  void close_stdin();

  /// Waits for exit, killing the child after `grace_s` seconds. Returns the
  /// exit status (128 + signal for signalled children).
  int wait(double grace_s = 5.0);

  pid_t pid() const { return pid_; }

 private:
  pid_t pid_ = -1;
  int stdin_fd_ = -1;
  int stdout_fd_ = -1;
  std::string buffer_;
  bool eof_ = false;
  std::optional<int> status_;
};

/// Splits a command line on whitespace, honoring single and double quotes
/// and backslash escapes. No other shell syntax is interpreted.
std::vector<std::string> split_command(std::string_view command);

}  // namespace edgebench
