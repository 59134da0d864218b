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
#include <optional>
#include <string>
#include <vector>

#include "edgebench/analysis.hpp"
#include "edgebench/formats.hpp"
#include "edgebench/timing.hpp"

namespace edgebench::report {

/// Everything a report can show. Records keep their input order; tables
/// order devices and comparisons by first appearance.
struct ReportBundle {
  std::vector<timing::LatencyRecord> latency;
  std::vector<analysis::EnergyRecord> energy;
  std::vector<formats::SpeedupEntry> speedups;
  std::vector<formats::FitEntry> fits;
  std::vector<formats::QualityEntry> quality;

  bool empty() const;
  void append(ReportBundle other);
};

/// Reads every recognized CSV under `dir` (recursively, in path order).
/// Series files and unrecognized files are skipped.
ReportBundle load_bundle(const std::filesystem::path& dir);

enum class Format { kCsv, kMarkdown };

struct RenderedFile {
  std::string path;  // relative to the report root, '/' separated
  std::string content;
};

/// Renders all tables and plot series. Output is a pure function of the
/// bundle. In markdown mode a combined report.md is included as well.
/// Throws EmptyBundle.
std::vector<RenderedFile> render_tables(const ReportBundle& bundle, Format format);

/// Writes rendered files below `out_dir`, each atomically.
void write_report(const std::vector<RenderedFile>& files, const std::filesystem::path& out_dir);

/// Single tables, markdown. Each starts with its caption line.
std::string latency_markdown(const ReportBundle& bundle, TaskKind task);
std::string energy_markdown(const ReportBundle& bundle, TaskKind task);
std::string summary_markdown(const ReportBundle& bundle);
std::string speedup_markdown(const ReportBundle& bundle);
std::string fit_markdown(const ReportBundle& bundle);
std::string quality_markdown(const ReportBundle& bundle, const std::string& metric);

std::string summary_csv(const ReportBundle& bundle);

/// dataset_size,observed_ms,std_ms[,fitted_ms]. Rows without a usable
/// measurement are left out. Throws EmptyInput when nothing remains.
std::string emit_plot_series(const std::vector<timing::LatencyRecord>& records,
                             const std::optional<analysis::HyperbolicFit>& fit = std::nullopt);

/// "maxwell_gpu_maxn" style file-name fragment for a device.
std::string device_slug(const DeviceConfig& device);

}  // namespace edgebench::report
