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

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "edgebench/analysis.hpp"
#include "edgebench/timing.hpp"
#include "edgebench/trace.hpp"
#include "edgebench/types.hpp"

namespace edgebench::harness {

/// (height, width, channels) of one input image.
using InputShape = std::array<std::size_t, 3>;

/// 128x128x3 for the segmentation networks, 224x224x3 for classification.
InputShape default_input_shape(TaskKind task);

struct RunnerSpec {
  std::vector<std::string> launch_command;
  std::string model_artifact;
  InputShape input_shape{128, 128, 3};

  void validate() const;
};

struct BenchPlan {
  TaskKind task = TaskKind::kOdSegmentation;
  DeviceConfig device;  // device.protocol selects the timing protocol
  std::vector<std::size_t> dataset_sizes;
  std::size_t repetitions = 10;
  std::size_t batch_size = timing::kDefaultBatchSize;
  trace::ExperimentTimeline timeline;
  std::string model;  // path sent with every load
  InputShape input_shape{128, 128, 3};
  std::string data = "synthetic";     // forwarded in predict messages
  std::string materialize_data_dir;   // if set, synthetic datasets are written here
  std::string description;

  void validate() const;

  /// Parses the JSON plan file format. Unknown keys are rejected.
  static BenchPlan from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

/// Number of predict messages sent for one dataset size, warm-up included.
std::size_t predictions_per_dataset(const BenchPlan& plan, std::size_t dataset_size);

/// Element count carried by the i-th predict message (0 = warm-up).
std::size_t predict_count(const BenchPlan& plan, std::size_t dataset_size, std::size_t index);

struct RunOutcome {
  timing::TimingRun run;
  double load_ms = 0.0;
  bool anomalous = false;
  std::string error;  // runner-reported error text
  // Orchestrator-side round trip per predict message; diagnostics only, the
  // canonical times are the runner-reported ones in run.wall_ms.
  std::vector<double> non_canonical_round_trip_ms;
};

struct BenchResult {
  BenchPlan plan;
  std::vector<RunOutcome> runs;  // one per plan dataset size, in plan order
  std::map<std::string, std::string> runner_metadata;

  nlohmann::json to_json() const;
};

struct BenchOptions {
  bool sleep = true;
  // Replaces the real sleep (tests record the requested guard periods).
  std::function<void(double seconds)> sleeper;
  double reply_timeout_s = 0.0;  // 0 waits forever
};

/// Runs the plan against one runner process following the experiment
/// timeline: idle guard, load, gap, then the protocol's predictions.
/// A runner error for one dataset marks that run anomalous and the
/// campaign continues. Throws RunnerLaunchFailure or ProtocolViolation.
BenchResult run_benchmark(const BenchPlan& plan, const RunnerSpec& runner,
                          const BenchOptions& options = {});

/// Latency records for a result: runs with errors become anomalous records
/// carrying the error text.
std::vector<timing::LatencyRecord> latency_records(const BenchResult& result);

inline constexpr std::uint64_t kSyntheticSeed = 20220131;

/// Deterministic pseudo-random RGB bytes for `count` images of `shape`.
std::vector<std::uint8_t> synthetic_images(std::size_t count, const InputShape& shape,
                                           std::uint64_t seed = kSyntheticSeed);

/// Writes synthetic_images() as raw bytes; returns the file path.
std::filesystem::path write_synthetic_dataset(const std::filesystem::path& dir, std::size_t count,
                                              const InputShape& shape);

struct ReplayFilter {
  std::optional<TaskKind> task;
  std::optional<std::string> device;      // device name, exact
  std::optional<std::string> power_mode;  // exact; "" matches devices without modes
};

/// Fixture rows matching the filter, anomaly flags preserved.
/// Throws FixtureNotFound or NoMatchingRows.
std::vector<timing::LatencyRecord> replay_fixture(const std::filesystem::path& fixture,
                                                  const ReplayFilter& filter);

/// Same for energy fixtures.
std::vector<analysis::EnergyRecord> replay_energy_fixture(const std::filesystem::path& fixture,
                                                          const ReplayFilter& filter);

struct AlignedDataset {
  std::size_t dataset_size = 0;
  trace::PhaseWindow window;
  trace::StablePower power;
};

/// Pairs each plan dataset size with its inference window's stable power.
/// Throws SegmentationFailure when no plateau is found and CountMismatch
/// when the plateau count differs from the plan.
std::vector<AlignedDataset> align_trace(const BenchPlan& plan, const trace::PowerTrace& power,
                                        const trace::SegmentationConfig& config = {},
                                        const trace::TrimPolicy& trim = {});
std::vector<AlignedDataset> align_trace(const BenchResult& result, const trace::PowerTrace& power,
                                        const trace::SegmentationConfig& config = {},
                                        const trace::TrimPolicy& trim = {});

/// Joins aligned powers with latency records of the same size into energy
/// records (W x ms = mJ). Sizes without a measured latency are skipped.
std::vector<analysis::EnergyRecord> energy_records(const BenchPlan& plan,
                                                   const std::vector<AlignedDataset>& aligned,
                                                   const std::vector<timing::LatencyRecord>& latency);

}  // namespace edgebench::harness
