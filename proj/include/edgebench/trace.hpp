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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace edgebench::trace {

/// One meter reading. Units: seconds since log start, volts, amperes.
struct PowerSample {
  double t = 0.0;
  double voltage = 0.0;
  double current = 0.0;

  friend bool operator==(const PowerSample&, const PowerSample&) = default;
};

inline double instantaneous_power(const PowerSample& s) { return s.voltage * s.current; }

struct PowerTrace {
  std::vector<PowerSample> samples;  // strictly increasing in t
  double nominal_period = 1.0;       // seconds; informational only

  std::vector<double> powers() const;
  std::size_t size() const { return samples.size(); }
  bool empty() const { return samples.empty(); }

  friend bool operator==(const PowerTrace&, const PowerTrace&) = default;
};

inline constexpr std::string_view kPowerLogHeader = "timestamp_s,voltage_V,current_A";

/// Parses the canonical `timestamp_s,voltage_V,current_A` log.
/// Throws MalformedLog, EmptyLog or NonMonotonicTimestamps.
PowerTrace parse_power_log(std::string_view text);

/// Inverse of parse_power_log. Numbers use the shortest round-trip form.
std::string serialize_power_log(const PowerTrace& trace);

/// How to read a USB tester's native export. Column names are matched
/// case-insensitively as substrings; empty means auto-detect.
struct TesterExportFormat {
  std::string time_column;     // numeric seconds or clock time hh:mm:ss[.fff]
  std::string voltage_column;
  std::string current_column;
  char delimiter = '\0';       // '\0' = auto (',', ';' or tab)
  std::optional<bool> decimal_comma;  // default: true when delimiter is ';'
  double current_scale = 0.0;  // 0 = infer from header: "mA" -> 1e-3, else 1
  double voltage_scale = 0.0;  // 0 = infer from header: "mV" -> 1e-3, else 1
};

/// Converts a tester export to a trace with timestamps relative to the
/// first row. Clock times that wrap past midnight keep increasing.
PowerTrace convert_tester_export(std::string_view text, const TesterExportFormat& format = {});

/// Guard periods the experiment left around each dataset.
struct ExperimentTimeline {
  std::size_t dataset_count = 1;
  double pre_load_idle_s = 10.0;
  double load_to_predict_gap_s = 5.0;
  bool has_engine_load_prelude = false;

  /// Throws MalformedInput unless pre_load_idle > load_to_predict_gap >= 0
  /// and dataset_count >= 1.
  void validate() const;
};

enum class PhaseKind { kEngineLoad, kIdle, kDatasetLoad, kInference };

std::string_view phase_kind_name(PhaseKind kind);

struct PhaseWindow {
  PhaseKind kind = PhaseKind::kIdle;
  std::size_t start_index = 0;  // inclusive
  std::size_t end_index = 0;    // exclusive
  std::optional<std::size_t> dataset_ordinal;  // absent for engine_load

  std::size_t size() const { return end_index - start_index; }
  friend bool operator==(const PhaseWindow&, const PhaseWindow&) = default;
};

/// Plateau detection parameters. A sample is "load" level when its power is
/// at least floor + k_load * (peak - floor) and "inference" level from
/// floor + k_inference * (peak - floor). The floor is the floor_quantile of
/// all powers, the peak their maximum.
struct SegmentationConfig {
  double k_load = 0.15;
  double k_inference = 0.5;
  double floor_quantile = 0.05;
  std::size_t min_inference_samples = 3;
  // Fraction of each guard period that must be observed. Quiet gaps shorter
  // than guard_tolerance * load_to_predict_gap are treated as dips inside
  // one active region.
  double guard_tolerance = 0.5;
};

struct PowerLevels {
  double floor = 0.0;
  double peak = 0.0;
  double load_threshold = 0.0;
  double inference_threshold = 0.0;
};

PowerLevels power_levels(const PowerTrace& trace, const SegmentationConfig& config = {});

/// Detects every (idle, dataset_load, inference) triple present in the
/// trace, ignoring timeline.dataset_count. Used when the caller compares the
/// count itself.
std::vector<PhaseWindow> detect_phases(const PowerTrace& trace, const ExperimentTimeline& timeline,
                                       const SegmentationConfig& config = {});

/// Like detect_phases but requires exactly timeline.dataset_count triples;
/// throws SegmentationError carrying the detected count otherwise.
std::vector<PhaseWindow> segment_phases(const PowerTrace& trace, const ExperimentTimeline& timeline,
                                        const SegmentationConfig& config = {});

std::vector<PhaseWindow> inference_windows(const std::vector<PhaseWindow>& windows);

/// Samples dropped from each end of an inference window: max(min_each_end,
/// floor(fraction * length)).
struct TrimPolicy {
  double fraction = 0.1;
  std::size_t min_each_end = 1;

  static TrimPolicy fixed(std::size_t each_end) { return {0.0, each_end}; }
  static TrimPolicy none() { return {0.0, 0}; }
  std::size_t per_end(std::size_t window_length) const;
};

struct StablePower {
  double mean_watts = 0.0;
  double std_watts = 0.0;  // population
  std::size_t samples_used = 0;
};

/// Mean and population std of V*I over the trimmed window.
/// Throws WindowTooShort if trimming leaves nothing.
StablePower mean_stable_power(const PowerTrace& trace, const PhaseWindow& window,
                              const TrimPolicy& trim = {});

}  // namespace edgebench::trace
