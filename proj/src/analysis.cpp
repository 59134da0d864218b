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

#include "edgebench/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>

#include <fmt/format.h>

#include "edgebench/error.hpp"

namespace edgebench::analysis {

double image_energy(double mean_power_w, double per_image_ms) {
  return mean_power_w * per_image_ms;
}

EnergySummary summarize_energy(TaskKind task, const DeviceConfig& device,
                               std::span<const EnergyRow> rows) {
  if (rows.empty()) throw Error(ErrorCode::kEmptyInput, "no energy rows to summarize");
  std::vector<double> power, energy;
  for (const auto& r : rows) {
    power.push_back(r.mean_power_w);
    energy.push_back(r.energy_mj);
  }
  return {task, device, mean_std(power), mean_std(energy)};
}

std::vector<EnergySummary> summarize_energy(std::span<const EnergyRecord> records) {
  if (records.empty()) throw Error(ErrorCode::kEmptyInput, "no energy records to summarize");
  struct Group {
    TaskKind task;
    DeviceConfig device;
    std::vector<EnergyRow> rows;
  };
  std::vector<Group> groups;
  for (const auto& rec : records) {
    auto it = std::find_if(groups.begin(), groups.end(), [&](const Group& g) {
      return g.task == rec.task && g.device.same_device(rec.device);
    });
    if (it == groups.end()) {
      groups.push_back({rec.task, rec.device, {}});
      it = std::prev(groups.end());
    }
    it->rows.push_back(rec.row);
  }
  std::vector<EnergySummary> out;
  for (const auto& g : groups) out.push_back(summarize_energy(g.task, g.device, g.rows));
  return out;
}

std::vector<SeriesPoint> to_series(std::span<const timing::LatencyRecord> records) {
  std::vector<SeriesPoint> out;
  for (const auto& r : records) {
    if (r.measured() && !r.anomalous) out.push_back({r.dataset_size, r.per_image_ms});
  }
  return out;
}

HyperbolicFit fit_hyperbolic(std::span<const SeriesPoint> points, FitWeighting weighting) {
  if (points.size() < 2) {
    throw Error(ErrorCode::kDegenerateInput, "need at least two points to fit");
  }
  for (const auto& p : points) {
    if (p.dataset_size == 0) throw Error(ErrorCode::kMalformedInput, "dataset_size must be positive");
  }
  const bool all_equal = std::all_of(points.begin(), points.end(), [&](const SeriesPoint& p) {
    return p.dataset_size == points.front().dataset_size;
  });
  if (all_equal) {
    throw Error(ErrorCode::kDegenerateInput, "all points share one dataset size");
  }

  // Weighted linear regression of t on x = 1/n, centered for stability.
  double sw = 0.0, sx = 0.0, sy = 0.0;
  for (const auto& p : points) {
    const double n = static_cast<double>(p.dataset_size);
    const double w = weighting == FitWeighting::kInverseSize ? 1.0 / n : 1.0;
    sw += w;
    sx += w / n;
    sy += w * p.per_image_ms;
  }
  const double xbar = sx / sw;
  const double ybar = sy / sw;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& p : points) {
    const double n = static_cast<double>(p.dataset_size);
    const double w = weighting == FitWeighting::kInverseSize ? 1.0 / n : 1.0;
    const double dx = 1.0 / n - xbar;
    sxx += w * dx * dx;
    sxy += w * dx * (p.per_image_ms - ybar);
  }

  HyperbolicFit fit;
  fit.overload_term_ot = sxy / sxx;
  fit.independent_term_it = ybar - fit.overload_term_ot * xbar;
  fit.points = points.size();
  fit.weighting = weighting;
  double ss = 0.0;
  for (const auto& p : points) {
    const double r = p.per_image_ms - predict_latency(fit, static_cast<double>(p.dataset_size));
    ss += r * r;
  }
  fit.residual_rms = std::sqrt(ss / static_cast<double>(points.size()));
  return fit;
}

double predict_latency(const HyperbolicFit& fit, double n) {
  return fit.overload_term_ot / n + fit.independent_term_it;
}

SpeedupResult min_speedup(std::span<const SeriesPoint> slow, std::span<const SeriesPoint> fast,
                          TaskKind scenario) {
  std::map<std::size_t, double> fast_by_size;
  for (const auto& p : fast) fast_by_size.emplace(p.dataset_size, p.per_image_ms);

  std::optional<SpeedupResult> best;
  for (const auto& s : slow) {
    auto it = fast_by_size.find(s.dataset_size);
    if (it == fast_by_size.end()) continue;
    if (!(it->second > 0.0) || !(s.per_image_ms > 0.0)) {
      throw Error(ErrorCode::kMalformedInput,
                  fmt::format("non-positive time at dataset size {}", s.dataset_size));
    }
    const double ratio = s.per_image_ms / it->second;
    if (!best || ratio < best->value ||
        (ratio == best->value && s.dataset_size < best->argmin_dataset_size)) {
      best = SpeedupResult{scenario, ratio, s.dataset_size};
    }
  }
  if (!best) throw Error(ErrorCode::kNoCommonSizes, "series share no dataset size");
  return *best;
}

SpeedupResult min_speedup(std::span<const timing::LatencyRecord> slow,
                          std::span<const timing::LatencyRecord> fast) {
  const auto s = to_series(slow);
  const auto f = to_series(fast);
  const TaskKind scenario = slow.empty() ? TaskKind::kOdSegmentation : slow.front().task;
  return min_speedup(s, f, scenario);
}

double asymptotic_speedup(double edge_per_image_ms, const HyperbolicFit& fit) {
  if (!(fit.independent_term_it > 0.0)) {
    throw Error(ErrorCode::kNonPositiveIT,
                fmt::format("independent term {} ms is not positive", fit.independent_term_it));
  }
  return edge_per_image_ms / fit.independent_term_it;
}

}  // namespace edgebench::analysis
