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

#include "edgebench/timing.hpp"

#include <cmath>

#include <fmt/format.h>

#include "edgebench/error.hpp"
#include "edgebench/stats.hpp"

namespace edgebench::timing {
namespace {

void check_run(const TimingRun& run, Protocol expected, ErrorCode too_few, const char* unit) {
  if (run.device.protocol != expected) {
    throw Error(ErrorCode::kMalformedInput,
                fmt::format("run was measured with protocol {}, expected {}",
                            protocol_name(run.device.protocol), protocol_name(expected)));
  }
  if (run.dataset_size == 0) throw Error(ErrorCode::kMalformedInput, "dataset_size must be positive");
  if (run.wall_ms.size() < 2) {
    throw Error(too_few, fmt::format("need a warm-up plus at least one {}, got {} measurement(s)",
                                     unit, run.wall_ms.size()));
  }
  for (double ms : run.wall_ms) {
    if (!(ms > 0.0) || !std::isfinite(ms)) {
      throw Error(ErrorCode::kMalformedInput, fmt::format("wall time {} ms is not positive", ms));
    }
  }
}

LatencyRecord make_record(const TimingRun& run, const std::vector<double>& per_image) {
  const auto ms = mean_std(per_image);
  LatencyRecord rec;
  rec.task = run.task;
  rec.device = run.device;
  rec.dataset_size = run.dataset_size;
  rec.per_image_ms = ms.mean;
  rec.std_ms = ms.std;
  return rec;
}

}  // namespace

LatencyRecord per_image_whole_dataset(const TimingRun& run) {
  check_run(run, Protocol::kWholeDataset, ErrorCode::kTooFewRepetitions, "repetition");
  std::vector<double> per_image;
  const auto n = static_cast<double>(run.dataset_size);
  for (std::size_t i = 1; i < run.wall_ms.size(); ++i) per_image.push_back(run.wall_ms[i] / n);
  return make_record(run, per_image);
}

std::size_t batch_count(std::size_t dataset_size, std::size_t batch_size) {
  return (dataset_size + batch_size - 1) / batch_size;
}

LatencyRecord per_image_batched(const TimingRun& run, std::size_t batch_size) {
  if (batch_size == 0) throw Error(ErrorCode::kMalformedInput, "batch_size must be positive");
  check_run(run, Protocol::kBatched, ErrorCode::kTooFewBatches, "batch");
  const std::size_t batches = batch_count(run.dataset_size, batch_size);
  std::vector<double> per_image;
  for (std::size_t i = 1; i < run.wall_ms.size(); ++i) {
    // Batches cycle through the dataset; only the final one may be short.
    const std::size_t slot = (i - 1) % batches;
    const std::size_t elements = std::min(batch_size, run.dataset_size - slot * batch_size);
    per_image.push_back(run.wall_ms[i] / static_cast<double>(elements));
  }
  return make_record(run, per_image);
}

LatencyRecord per_image_element_wise(const TimingRun& run) {
  check_run(run, Protocol::kElementWise, ErrorCode::kTooFewElements, "element");
  std::vector<double> per_image(run.wall_ms.begin() + 1, run.wall_ms.end());
  return make_record(run, per_image);
}

LatencyRecord per_image(const TimingRun& run, std::size_t batch_size) {
  switch (run.device.protocol) {
    case Protocol::kWholeDataset: return per_image_whole_dataset(run);
    case Protocol::kBatched: return per_image_batched(run, batch_size);
    case Protocol::kElementWise: return per_image_element_wise(run);
  }
  throw Error(ErrorCode::kMalformedInput, "unknown protocol");
}

}  // namespace edgebench::timing
