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

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "edgebench/analysis.hpp"
#include "edgebench/trace.hpp"

namespace edgebench::testing {

std::filesystem::path fixture_path(std::string_view name);
std::filesystem::path golden_path(std::string_view name);
std::filesystem::path mock_runner_path();
std::string slurp(const std::filesystem::path& path);

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(std::string_view name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

// ---- synthetic power traces --------------------------------------------------

/// A run of samples at constant power (before noise).
struct Segment {
  std::size_t samples = 0;
  double watts = 0.0;
};

/// One sample per second at 5 V, current = watts / 5 (+ uniform noise in watts
/// when `rng` is given).
trace::PowerTrace build_trace(const std::vector<Segment>& segments, double noise_w = 0.0,
                              std::mt19937_64* rng = nullptr);

/// A trace with known phase windows, built segment by segment.
struct KnownTrace {
  trace::PowerTrace power;
  std::vector<trace::PhaseWindow> windows;  // idle, dataset_load, inference per dataset
  std::vector<double> inference_watts;      // nominal plateau level per dataset
};

/// Random multi-dataset experiment: idle >= 10 s, load, 5 s gap, inference.
KnownTrace random_experiment(std::mt19937_64& rng, std::size_t datasets, bool engine_prelude);

// ---- least-squares oracle ----------------------------------------------------

struct OracleFit {
  long double ot = 0.0L;
  long double it = 0.0L;
};

/// Solves the raw (uncentered) normal equations of t = ot/n + it by Cramer's
/// rule in long double. Weights default to 1.
OracleFit oracle_fit(const std::vector<analysis::SeriesPoint>& points, bool inverse_size_weights = false);

// ---- property suites shared by the property tests and the acceptance run ----

struct PropertyOutcome {
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;

  bool ok() const { return failures == 0 && cases > 0; }
  void fail(std::string message) {
    if (failures++ == 0) first_failure = std::move(message);
  }
};

PropertyOutcome dice_properties(std::uint64_t seed, std::size_t pairs);
PropertyOutcome timing_scaling_properties(std::uint64_t seed, std::size_t runs);
PropertyOutcome speedup_scaling_properties(std::uint64_t seed, std::size_t cases);
PropertyOutcome std_and_rounding_properties(std::uint64_t seed, std::size_t cases);
PropertyOutcome trace_roundtrip_properties(std::uint64_t seed, std::size_t traces);
PropertyOutcome segmentation_properties(std::uint64_t seed, std::size_t traces);
PropertyOutcome fit_oracle_properties(std::uint64_t seed, std::size_t cases);

}  // namespace edgebench::testing
