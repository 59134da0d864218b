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

#include <cstddef>
#include <string>
#include <vector>

#include "edgebench/types.hpp"

namespace edgebench::timing {

/// Raw wall times for one device x task x dataset size, in milliseconds.
/// The first entry is always the warm-up prediction and is discarded:
///  - whole_dataset: one time per repetition over the full dataset
///  - batched: one time per batch (the warm-up re-runs the first batch)
///  - element_wise: one time per element (the warm-up re-runs element 0)
struct TimingRun {
  DeviceConfig device;
  TaskKind task = TaskKind::kOdSegmentation;
  std::size_t dataset_size = 0;
  std::vector<double> wall_ms;
};

struct LatencyRecord {
  TaskKind task = TaskKind::kOdSegmentation;
  DeviceConfig device;
  std::size_t dataset_size = 0;
  double per_image_ms = 0.0;
  double std_ms = 0.0;  // population
  bool anomalous = false;
  std::string error;  // e.g. "memory_error"; when set there is no measurement

  bool measured() const { return error.empty(); }
};

inline constexpr std::size_t kDefaultBatchSize = 10;

LatencyRecord per_image_whole_dataset(const TimingRun& run);
LatencyRecord per_image_batched(const TimingRun& run, std::size_t batch_size = kDefaultBatchSize);
LatencyRecord per_image_element_wise(const TimingRun& run);

/// Dispatches on run.device.protocol.
LatencyRecord per_image(const TimingRun& run, std::size_t batch_size = kDefaultBatchSize);

/// Number of batches a dataset splits into; the last may be short.
std::size_t batch_count(std::size_t dataset_size, std::size_t batch_size);

}  // namespace edgebench::timing
