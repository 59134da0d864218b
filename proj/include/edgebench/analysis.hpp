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
#include <span>
#include <vector>

#include "edgebench/stats.hpp"
#include "edgebench/timing.hpp"
#include "edgebench/types.hpp"

namespace edgebench::analysis {

/// Energy per image in millijoules: watts times milliseconds.
double image_energy(double mean_power_w, double per_image_ms);

struct EnergyRow {
  std::size_t dataset_size = 0;
  double mean_power_w = 0.0;
  double power_std_w = 0.0;
  double energy_mj = 0.0;
};

/// An EnergyRow tagged with the task and device it was measured on; the
/// energy fixture rows have this shape.
struct EnergyRecord {
  TaskKind task = TaskKind::kOdSegmentation;
  DeviceConfig device;
  EnergyRow row;
};

struct EnergySummary {
  TaskKind task = TaskKind::kOdSegmentation;
  DeviceConfig device;
  MeanStd power_w;   // across per-size mean powers
  MeanStd energy_mj; // across per-size energies
};

/// Mean and population std of power and energy across the rows of one
/// task x device pair. Throws EmptyInput.
EnergySummary summarize_energy(TaskKind task, const DeviceConfig& device,
                               std::span<const EnergyRow> rows);

/// Groups records by (task, device) in first-appearance order and summarizes
/// each group.
std::vector<EnergySummary> summarize_energy(std::span<const EnergyRecord> records);

/// One observation of per-image latency at a dataset size.
struct SeriesPoint {
  std::size_t dataset_size = 0;
  double per_image_ms = 0.0;
};

/// Measured, non-anomalous records as a series, in input order.
std::vector<SeriesPoint> to_series(std::span<const timing::LatencyRecord> records);

enum class FitWeighting { kUniform, kInverseSize };

/// t(n) = overload / n + independent.
struct HyperbolicFit {
  double overload_term_ot = 0.0;     // ms * images
  double independent_term_it = 0.0;  // ms
  double residual_rms = 0.0;         // ms, unweighted
  std::size_t points = 0;
  FitWeighting weighting = FitWeighting::kUniform;
};

/// Least-squares fit of t against 1/n. Throws DegenerateInput when fewer
/// than two distinct dataset sizes are given.
HyperbolicFit fit_hyperbolic(std::span<const SeriesPoint> points,
                             FitWeighting weighting = FitWeighting::kUniform);

double predict_latency(const HyperbolicFit& fit, double n);

struct SpeedupResult {
  TaskKind scenario = TaskKind::kOdSegmentation;
  double value = 0.0;
  std::size_t argmin_dataset_size = 0;
};

/// Minimum over common dataset sizes of slow / fast per-image time. Ties go
/// to the smaller size. Throws NoCommonSizes.
SpeedupResult min_speedup(std::span<const SeriesPoint> slow, std::span<const SeriesPoint> fast,
                          TaskKind scenario);

/// Record overload: anomalous and unmeasured records are excluded first; the
/// scenario is the task of the slow series.
SpeedupResult min_speedup(std::span<const timing::LatencyRecord> slow,
                          std::span<const timing::LatencyRecord> fast);

/// Limit of edge / cloud time as the dataset grows: edge_ms / IT.
/// Throws NonPositiveIT.
double asymptotic_speedup(double edge_per_image_ms, const HyperbolicFit& fit);

}  // namespace edgebench::analysis
