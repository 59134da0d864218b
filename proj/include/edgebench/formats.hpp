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

#include <string>
#include <string_view>
#include <vector>

#include "edgebench/analysis.hpp"
#include "edgebench/timing.hpp"

// Reading and writing the CSV files exchanged between subcommands. Latency
// and energy files share the bundled fixtures' schema and precision (two
// decimals for times, one for powers, integer millijoules), so re-writing a
// parsed fixture reproduces it byte for byte.
namespace edgebench::formats {

inline constexpr std::string_view kLatencyHeader =
    "task,device,power_mode,dataset_size,per_image_ms,std_ms,anomalous,error";
inline constexpr std::string_view kEnergyHeader =
    "task,device,power_mode,dataset_size,mean_power_w,power_std_w,energy_mj";
inline constexpr std::string_view kSeriesHeader = "dataset_size,per_image_ms";
inline constexpr std::string_view kSpeedupHeader = "task,comparison,speedup,dataset_size";
inline constexpr std::string_view kFitHeader =
    "task,device,power_mode,overload_term_ot,independent_term_it,residual_rms,points,weighting";
inline constexpr std::string_view kQualityHeader = "metric,task,comparison,mean,std,count";

enum class FileKind { kLatency, kEnergy, kSeries, kSpeedup, kFit, kQuality, kUnknown };

/// Classifies a CSV by its header line.
FileKind detect_kind(std::string_view text);

std::vector<timing::LatencyRecord> parse_latency(std::string_view text);
std::string write_latency(const std::vector<timing::LatencyRecord>& records);

std::vector<analysis::EnergyRecord> parse_energy(std::string_view text);
std::string write_energy(const std::vector<analysis::EnergyRecord>& records);

/// Series files may also be given as latency files; anomalous rows are then
/// dropped.
std::vector<analysis::SeriesPoint> parse_series(std::string_view text);
std::string write_series(const std::vector<analysis::SeriesPoint>& points);

struct SpeedupEntry {
  TaskKind task = TaskKind::kOdSegmentation;
  std::string comparison;  // column label, e.g. "Edge TPU vs. Maxwell GPU (MaxN)"
  double speedup = 0.0;
  std::size_t dataset_size = 0;
};
std::vector<SpeedupEntry> parse_speedups(std::string_view text);
std::string write_speedups(const std::vector<SpeedupEntry>& entries);

struct FitEntry {
  TaskKind task = TaskKind::kOdSegmentation;
  DeviceConfig device;
  analysis::HyperbolicFit fit;
};
std::vector<FitEntry> parse_fits(std::string_view text);
std::string write_fits(const std::vector<FitEntry>& entries);

struct QualityEntry {
  std::string metric;      // "dice" or "classification_error"
  std::string task;        // free text row label, e.g. "od_segmentation"
  std::string comparison;  // column label
  double mean = 0.0;
  double std = 0.0;
  std::size_t count = 0;
};
std::vector<QualityEntry> parse_quality(std::string_view text);
std::string write_quality(const std::vector<QualityEntry>& entries);

}  // namespace edgebench::formats
