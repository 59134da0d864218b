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

#include "edgebench/formats.hpp"

#include <fmt/format.h>

#include "edgebench/csv.hpp"
#include "edgebench/error.hpp"
#include "edgebench/stats.hpp"

namespace edgebench::formats {
namespace {

[[noreturn]] void bad(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::kMalformedInput, fmt::format("line {}: {}", line, what));
}

std::string first_line(std::string_view text) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  auto eol = text.find('\n');
  auto line = text.substr(0, eol);
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return std::string(line);
}

// Accessor for one row with line-numbered errors.
class Row {
 public:
  Row(const CsvTable& table, std::size_t index)
      : table_(table), fields_(table.rows[index]), line_(table.line_numbers[index]) {
    if (fields_.size() != table.header.size()) {
      bad(line_, fmt::format("expected {} fields, got {}", table.header.size(), fields_.size()));
    }
  }

  const std::string& text(std::string_view column) const {
    auto idx = table_.column(column);
    if (!idx) bad(1, fmt::format("missing column '{}'", column));
    return fields_[*idx];
  }
  bool has(std::string_view column) const { return table_.column(column).has_value(); }

  double number(std::string_view column) const {
    double v = 0.0;
    if (!parse_double(text(column), v)) {
      bad(line_, fmt::format("column '{}': '{}' is not a number", column, text(column)));
    }
    return v;
  }
  std::size_t size(std::string_view column) const {
    long long v = 0;
    if (!parse_int(text(column), v) || v <= 0) {
      bad(line_, fmt::format("column '{}': '{}' is not a positive integer", column, text(column)));
    }
    return static_cast<std::size_t>(v);
  }
  TaskKind task() const {
    auto t = parse_task(text("task"));
    if (!t) bad(line_, fmt::format("unknown task '{}'", text("task")));
    return *t;
  }
  bool flag(std::string_view column) const {
    const auto& v = text(column);
    if (v == "true") return true;
    if (v == "false" || v.empty()) return false;
    bad(line_, fmt::format("column '{}': expected true/false, got '{}'", column, v));
  }
  std::size_t line() const { return line_; }

 private:
  const CsvTable& table_;
  const std::vector<std::string>& fields_;
  std::size_t line_;
};

CsvTable table_with(std::string_view text, std::initializer_list<std::string_view> required) {
  auto table = parse_csv(text);
  if (table.header.empty()) bad(1, "missing header");
  for (auto col : required) {
    if (!table.column(col)) bad(1, fmt::format("missing column '{}'", col));
  }
  return table;
}

std::string clean_label(std::string_view label) {
  std::string out(label);
  for (auto& c : out) {
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  }
  return out;
}

DeviceConfig device_of(const Row& row) {
  return make_device(row.text("device"), row.text("power_mode"));
}

}  // namespace

FileKind detect_kind(std::string_view text) {
  const auto header = first_line(text);
  if (header == kLatencyHeader || header == "task,device,power_mode,dataset_size,per_image_ms,std_ms" ||
      header == "task,device,power_mode,dataset_size,per_image_ms,std_ms,anomalous") {
    return FileKind::kLatency;
  }
  if (header == kEnergyHeader) return FileKind::kEnergy;
  if (header == kSeriesHeader) return FileKind::kSeries;
  if (header == kSpeedupHeader) return FileKind::kSpeedup;
  if (header == kFitHeader) return FileKind::kFit;
  if (header == kQualityHeader) return FileKind::kQuality;
  return FileKind::kUnknown;
}

std::vector<timing::LatencyRecord> parse_latency(std::string_view text) {
  const auto table = table_with(text, {"task", "device", "power_mode", "dataset_size",
                                       "per_image_ms", "std_ms"});
  std::vector<timing::LatencyRecord> out;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const Row row(table, i);
    timing::LatencyRecord rec;
    rec.task = row.task();
    rec.device = device_of(row);
    rec.dataset_size = row.size("dataset_size");
    rec.anomalous = row.has("anomalous") && row.flag("anomalous");
    if (row.has("error")) rec.error = row.text("error");
    if (rec.measured()) {
      rec.per_image_ms = row.number("per_image_ms");
      rec.std_ms = row.number("std_ms");
      if (!(rec.per_image_ms > 0.0) || rec.std_ms < 0.0) {
        bad(row.line(), "per_image_ms must be positive and std_ms non-negative");
      }
    } else if (!row.text("per_image_ms").empty()) {
      bad(row.line(), "rows with an error carry no per_image_ms");
    }
    out.push_back(std::move(rec));
  }
  return out;
}

std::string write_latency(const std::vector<timing::LatencyRecord>& records) {
  std::string out(kLatencyHeader);
  out += '\n';
  for (const auto& r : records) {
    const auto ms_text = r.measured() ? format_fixed(r.per_image_ms, 2) : std::string();
    const auto std_text = r.measured() ? format_fixed(r.std_ms, 2) : std::string();
    out += fmt::format("{},{},{},{},{},{},{},{}\n", task_name(r.task), clean_label(r.device.name),
                       clean_label(r.device.power_mode), r.dataset_size, ms_text, std_text,
                       r.anomalous ? "true" : "false", clean_label(r.error));
  }
  return out;
}

std::vector<analysis::EnergyRecord> parse_energy(std::string_view text) {
  const auto table = table_with(text, {"task", "device", "power_mode", "dataset_size",
                                       "mean_power_w", "power_std_w", "energy_mj"});
  std::vector<analysis::EnergyRecord> out;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const Row row(table, i);
    analysis::EnergyRecord rec;
    rec.task = row.task();
    rec.device = device_of(row);
    rec.row.dataset_size = row.size("dataset_size");
    rec.row.mean_power_w = row.number("mean_power_w");
    rec.row.power_std_w = row.number("power_std_w");
    rec.row.energy_mj = row.number("energy_mj");
    if (rec.row.mean_power_w < 0.0 || rec.row.power_std_w < 0.0 || rec.row.energy_mj < 0.0) {
      bad(row.line(), "negative power or energy");
    }
    out.push_back(std::move(rec));
  }
  return out;
}

std::string write_energy(const std::vector<analysis::EnergyRecord>& records) {
  std::string out(kEnergyHeader);
  out += '\n';
  for (const auto& r : records) {
    out += fmt::format("{},{},{},{},{},{},{}\n", task_name(r.task), clean_label(r.device.name),
                       clean_label(r.device.power_mode), r.row.dataset_size,
                       format_fixed(r.row.mean_power_w, 1), format_fixed(r.row.power_std_w, 1),
                       format_fixed(r.row.energy_mj, 0));
  }
  return out;
}

std::vector<analysis::SeriesPoint> parse_series(std::string_view text) {
  if (detect_kind(text) == FileKind::kLatency) {
    const auto records = parse_latency(text);
    return analysis::to_series(records);
  }
  const auto table = table_with(text, {"dataset_size", "per_image_ms"});
  std::vector<analysis::SeriesPoint> out;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const Row row(table, i);
    const double ms = row.number("per_image_ms");
    if (!(ms > 0.0)) bad(row.line(), "per_image_ms must be positive");
    out.push_back({row.size("dataset_size"), ms});
  }
  return out;
}

std::string write_series(const std::vector<analysis::SeriesPoint>& points) {
  std::string out(kSeriesHeader);
  out += '\n';
  for (const auto& p : points) out += fmt::format("{},{}\n", p.dataset_size, format_fixed(p.per_image_ms, 2));
  return out;
}

std::vector<SpeedupEntry> parse_speedups(std::string_view text) {
  const auto table = table_with(text, {"task", "comparison", "speedup", "dataset_size"});
  std::vector<SpeedupEntry> out;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const Row row(table, i);
    out.push_back({row.task(), row.text("comparison"), row.number("speedup"), row.size("dataset_size")});
  }
  return out;
}

std::string write_speedups(const std::vector<SpeedupEntry>& entries) {
  std::string out(kSpeedupHeader);
  out += '\n';
  for (const auto& e : entries) {
    out += fmt::format("{},{},{},{}\n", task_name(e.task), clean_label(e.comparison), e.speedup,
                       e.dataset_size);
  }
  return out;
}

std::vector<FitEntry> parse_fits(std::string_view text) {
  const auto table = table_with(text, {"task", "device", "power_mode", "overload_term_ot",
                                       "independent_term_it", "residual_rms", "points",
                                       "weighting"});
  std::vector<FitEntry> out;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const Row row(table, i);
    FitEntry e;
    e.task = row.task();
    e.device = device_of(row);
    e.fit.overload_term_ot = row.number("overload_term_ot");
    e.fit.independent_term_it = row.number("independent_term_it");
    e.fit.residual_rms = row.number("residual_rms");
    e.fit.points = row.size("points");
    const auto& w = row.text("weighting");
    if (w == "uniform") {
      e.fit.weighting = analysis::FitWeighting::kUniform;
    } else if (w == "inverse_size") {
      e.fit.weighting = analysis::FitWeighting::kInverseSize;
    } else {
      bad(row.line(), "weighting must be uniform or inverse_size");
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::string write_fits(const std::vector<FitEntry>& entries) {
  std::string out(kFitHeader);
  out += '\n';
  for (const auto& e : entries) {
    out += fmt::format("{},{},{},{},{},{},{},{}\n", task_name(e.task), clean_label(e.device.name),
                       clean_label(e.device.power_mode), e.fit.overload_term_ot,
                       e.fit.independent_term_it, e.fit.residual_rms, e.fit.points,
                       e.fit.weighting == analysis::FitWeighting::kUniform ? "uniform"
                                                                           : "inverse_size");
  }
  return out;
}

std::vector<QualityEntry> parse_quality(std::string_view text) {
  const auto table = table_with(text, {"metric", "task", "comparison", "mean", "std", "count"});
  std::vector<QualityEntry> out;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const Row row(table, i);
    out.push_back({row.text("metric"), row.text("task"), row.text("comparison"),
                   row.number("mean"), row.number("std"), row.size("count")});
  }
  return out;
}

std::string write_quality(const std::vector<QualityEntry>& entries) {
  std::string out(kQualityHeader);
  out += '\n';
  for (const auto& e : entries) {
    out += fmt::format("{},{},{},{},{},{}\n", clean_label(e.metric), clean_label(e.task),
                       clean_label(e.comparison), e.mean, e.std, e.count);
  }
  return out;
}

}  // namespace edgebench::formats
