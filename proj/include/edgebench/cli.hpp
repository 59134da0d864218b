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

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace edgebench::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command line. `args` excludes the program name. Results go to
/// `out`; diagnostics and the error name go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Sets the diagnostics level from EDGEBENCH_LOG (error, warn, info, debug).
void configure_logging();

/// Resolves fixture shorthands: "a1".."a3" and "b1".."b3" name the bundled
/// latency and energy tables, other bare names the bundled series files.
/// Existing paths are returned unchanged.
std::filesystem::path resolve_fixture(const std::string& name);

}  // namespace edgebench::cli
