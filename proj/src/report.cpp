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

#include "edgebench/report.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <set>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "edgebench/error.hpp"
#include "edgebench/harness.hpp"
#include "edgebench/io.hpp"
#include "edgebench/stats.hpp"

namespace edgebench::report {
namespace {

std::string_view latency_caption(TaskKind task) {
  switch (task) {
    case TaskKind::kOdSegmentation: return "Image prediction times for segmentation of OD (in milliseconds).";
    case TaskKind::kOcSegmentation: return "Image prediction times for segmentation of OC (in milliseconds).";
    case TaskKind::kFundusClassification:
      return "Image prediction times for eye fundus classification (in milliseconds).";
  }
  return "";
}

std::string_view energy_caption(TaskKind task) {
  switch (task) {
    case TaskKind::kOdSegmentation:
      return "Mean power and image prediction energy use for optic disc segmentation (in watts and millijoules).";
    case TaskKind::kOcSegmentation:
      return "Mean power and image prediction energy use for optic cup segmentation (in watts and millijoules).";
    case TaskKind::kFundusClassification:
      return "Mean power and image prediction energy use for eye fundus classification (in watts and "
             "millijoules).";
  }
  return "";
}

std::string_view summary_label(TaskKind task) {
  switch (task) {
    case TaskKind::kOdSegmentation: return "OD segmentation";
    case TaskKind::kOcSegmentation: return "OC segmentation";
    case TaskKind::kFundusClassification: return "Fundus classification";
  }
  return "";
}

std::string_view scenario_label(TaskKind task) {
  switch (task) {
    case TaskKind::kOdSegmentation: return "Optic disc";
    case TaskKind::kOcSegmentation: return "Optic cup";
    case TaskKind::kFundusClassification: return "Eye fundus image";
  }
  return "";
}

std::string quality_row_label(const std::string& task) {
  if (auto t = parse_task(task)) return std::string(scenario_label(*t));
  return task;
}

std::string quality_caption(const std::string& metric) {
  if (metric == "dice") return "Dice coefficient ratios for predictions (images).";
  if (metric == "classification_error") return "Mean errors for predictions (classifications).";
  return fmt::format("Quality metric {}.", metric);
}

std::string shape_label(TaskKind task, std::size_t n) {
  const auto s = harness::default_input_shape(task);
  return fmt::format("({}, {}, {}, {})", n, s[0], s[1], s[2]);
}

// Pipe table with a caption paragraph above it.
std::string markdown_table(std::string_view caption, const std::vector<std::string>& header,
                           const std::vector<std::vector<std::string>>& rows) {
  std::string out = fmt::format("{}\n\n", caption);
  out += fmt::format("| {} |\n", fmt::join(header, " | "));
  out += "|";
  for (std::size_t i = 0; i < header.size(); ++i) out += i == 0 ? " --- |" : " ---: |";
  out += "\n";
  for (const auto& row : rows) out += fmt::format("| {} |\n", fmt::join(row, " | "));
  return out;
}

template <typename T, typename Key>
std::vector<Key> first_appearance(const std::vector<T>& items, Key (*key)(const T&)) {
  std::vector<Key> out;
  for (const auto& item : items) {
    auto k = key(item);
    if (std::find(out.begin(), out.end(), k) == out.end()) out.push_back(std::move(k));
  }
  return out;
}

std::vector<DeviceConfig> devices_of(const std::vector<timing::LatencyRecord>& records) {
  std::vector<DeviceConfig> out;
  for (const auto& r : records) {
    auto same = [&](const DeviceConfig& d) { return d.same_device(r.device); };
    if (std::none_of(out.begin(), out.end(), same)) out.push_back(r.device);
  }
  return out;
}

std::vector<DeviceConfig> devices_of(const std::vector<analysis::EnergyRecord>& records) {
  std::vector<DeviceConfig> out;
  for (const auto& r : records) {
    auto same = [&](const DeviceConfig& d) { return d.same_device(r.device); };
    if (std::none_of(out.begin(), out.end(), same)) out.push_back(r.device);
  }
  return out;
}

template <typename T>
std::vector<T> for_task(const std::vector<T>& records, TaskKind task) {
  std::vector<T> out;
  std::copy_if(records.begin(), records.end(), std::back_inserter(out),
               [&](const T& r) { return r.task == task; });
  return out;
}

template <typename T>
std::set<std::size_t> sizes_of(const std::vector<T>& records, std::size_t (*size)(const T&)) {
  std::set<std::size_t> out;
  for (const auto& r : records) out.insert(size(r));
  return out;
}

std::string latency_cell(const timing::LatencyRecord& r) {
  std::string text;
  if (!r.measured()) {
    text = r.error;
    std::replace(text.begin(), text.end(), '_', ' ');
  } else {
    text = format_pm(r.per_image_ms, r.std_ms, 2);
  }
  return r.anomalous ? fmt::format("**{}**", text) : text;
}

std::string energy_summary_cells(const analysis::EnergySummary& s) {
  return fmt::format("{} | {}", format_pm(s.power_w.mean, s.power_w.std, 1),
                     format_pm(s.energy_mj.mean, s.energy_mj.std, 1));
}

template <typename T>
std::vector<TaskKind> tasks_of(const std::vector<T>& records) {
  std::vector<TaskKind> out;
  for (auto t : kAllTasks) {
    if (std::any_of(records.begin(), records.end(), [&](const T& r) { return r.task == t; })) {
      out.push_back(t);
    }
  }
  return out;
}

}  // namespace

bool ReportBundle::empty() const {
  return latency.empty() && energy.empty() && speedups.empty() && fits.empty() && quality.empty();
}

void ReportBundle::append(ReportBundle other) {
  auto move_into = [](auto& dst, auto& src) {
    dst.insert(dst.end(), std::make_move_iterator(src.begin()), std::make_move_iterator(src.end()));
  };
  move_into(latency, other.latency);
  move_into(energy, other.energy);
  move_into(speedups, other.speedups);
  move_into(fits, other.fits);
  move_into(quality, other.quality);
}

ReportBundle load_bundle(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) {
    throw Error(ErrorCode::kIoError, fmt::format("not a directory: {}", dir.string()));
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".csv") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  ReportBundle bundle;
  for (const auto& path : files) {
    const auto text = read_file(path);
    try {
      switch (formats::detect_kind(text)) {
        case formats::FileKind::kLatency: {
          auto recs = formats::parse_latency(text);
          bundle.latency.insert(bundle.latency.end(), recs.begin(), recs.end());
          break;
        }
        case formats::FileKind::kEnergy: {
          auto recs = formats::parse_energy(text);
          bundle.energy.insert(bundle.energy.end(), recs.begin(), recs.end());
          break;
        }
        case formats::FileKind::kSpeedup: {
          auto recs = formats::parse_speedups(text);
          bundle.speedups.insert(bundle.speedups.end(), recs.begin(), recs.end());
          break;
        }
        case formats::FileKind::kFit: {
          auto recs = formats::parse_fits(text);
          bundle.fits.insert(bundle.fits.end(), recs.begin(), recs.end());
          break;
        }
        case formats::FileKind::kQuality: {
          auto recs = formats::parse_quality(text);
          bundle.quality.insert(bundle.quality.end(), recs.begin(), recs.end());
          break;
        }
        case formats::FileKind::kSeries:
        case formats::FileKind::kUnknown:
          spdlog::info("report: skipping {}", path.string());
          break;
      }
    } catch (const Error& e) {
      throw Error(e.code(), fmt::format("{}: {}", path.string(), e.what()));
    }
  }
  return bundle;
}

std::string latency_markdown(const ReportBundle& bundle, TaskKind task) {
  const auto records = for_task(bundle.latency, task);
  const auto devices = devices_of(records);
  std::vector<std::string> header{"Dataset (shape)"};
  for (const auto& d : devices) header.push_back(d.label());
  std::vector<std::vector<std::string>> rows;
  for (auto n : sizes_of<timing::LatencyRecord>(records, [](const auto& r) { return r.dataset_size; })) {
    std::vector<std::string> row{shape_label(task, n)};
    for (const auto& d : devices) {
      auto it = std::find_if(records.begin(), records.end(), [&](const timing::LatencyRecord& r) {
        return r.dataset_size == n && r.device.same_device(d);
      });
      row.push_back(it == records.end() ? "-" : latency_cell(*it));
    }
    rows.push_back(std::move(row));
  }
  return markdown_table(latency_caption(task), header, rows);
}

std::string energy_markdown(const ReportBundle& bundle, TaskKind task) {
  const auto records = for_task(bundle.energy, task);
  const auto devices = devices_of(records);
  std::vector<std::string> header{"Dataset (shape)"};
  for (const auto& d : devices) {
    header.push_back(fmt::format("{} power (W)", d.label()));
    header.push_back(fmt::format("{} energy (mJ)", d.label()));
  }
  std::vector<std::vector<std::string>> rows;
  for (auto n : sizes_of<analysis::EnergyRecord>(records, [](const auto& r) { return r.row.dataset_size; })) {
    std::vector<std::string> row{shape_label(task, n)};
    for (const auto& d : devices) {
      auto it = std::find_if(records.begin(), records.end(), [&](const analysis::EnergyRecord& r) {
        return r.row.dataset_size == n && r.device.same_device(d);
      });
      if (it == records.end()) {
        row.insert(row.end(), {"-", "-"});
      } else {
        row.push_back(format_pm(it->row.mean_power_w, it->row.power_std_w, 1));
        row.push_back(format_fixed(it->row.energy_mj, 0));
      }
    }
    rows.push_back(std::move(row));
  }
  return markdown_table(energy_caption(task), header, rows);
}

std::string summary_markdown(const ReportBundle& bundle) {
  const auto summaries = analysis::summarize_energy(bundle.energy);
  const auto devices = devices_of(bundle.energy);
  std::vector<std::string> header{"Task"};
  for (const auto& d : devices) {
    header.push_back(fmt::format("{} power (W)", d.label()));
    header.push_back(fmt::format("{} energy (mJ)", d.label()));
  }
  std::vector<std::vector<std::string>> rows;
  for (auto task : tasks_of(bundle.energy)) {
    std::vector<std::string> row{std::string(summary_label(task))};
    for (const auto& d : devices) {
      auto it = std::find_if(summaries.begin(), summaries.end(), [&](const analysis::EnergySummary& s) {
        return s.task == task && s.device.same_device(d);
      });
      row.push_back(it == summaries.end() ? "- | -" : energy_summary_cells(*it));
    }
    rows.push_back(std::move(row));
  }
  return markdown_table("Mean powers and image prediction consumptions (in watts and millijoules).", header,
                        rows);
}

std::string summary_csv(const ReportBundle& bundle) {
  std::string out = "task,device,power_mode,power_mean_w,power_std_w,energy_mean_mj,energy_std_mj,count\n";
  for (const auto& s : analysis::summarize_energy(bundle.energy)) {
    out += fmt::format("{},{},{},{},{},{},{},{}\n", task_name(s.task), s.device.name, s.device.power_mode,
                       format_fixed(s.power_w.mean, 1), format_fixed(s.power_w.std, 1),
                       format_fixed(s.energy_mj.mean, 1), format_fixed(s.energy_mj.std, 1),
                       s.energy_mj.count);
  }
  return out;
}

std::string speedup_markdown(const ReportBundle& bundle) {
  const auto comparisons = first_appearance<formats::SpeedupEntry, std::string>(
      bundle.speedups, [](const formats::SpeedupEntry& e) { return e.comparison; });
  std::vector<std::string> header{"Scenario"};
  header.insert(header.end(), comparisons.begin(), comparisons.end());
  std::vector<std::vector<std::string>> rows;
  for (auto task : tasks_of(bundle.speedups)) {
    std::vector<std::string> row{std::string(scenario_label(task))};
    for (const auto& c : comparisons) {
      // The last entry wins when a comparison is given twice.
      auto it = std::find_if(bundle.speedups.rbegin(), bundle.speedups.rend(),
                             [&](const formats::SpeedupEntry& e) { return e.task == task && e.comparison == c; });
      row.push_back(it == bundle.speedups.rend() ? "-" : format_fixed(it->speedup, 2));
    }
    rows.push_back(std::move(row));
  }
  return markdown_table("Minimum speed-ups for Edge TPU and Maxwell GPU.", header, rows);
}

std::string fit_markdown(const ReportBundle& bundle) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& e : bundle.fits) {
    rows.push_back({std::string(scenario_label(e.task)), e.device.label(), format_fixed(e.fit.overload_term_ot, 3),
                    format_fixed(e.fit.independent_term_it, 3), format_fixed(e.fit.residual_rms, 3),
                    std::to_string(e.fit.points),
                    e.fit.weighting == analysis::FitWeighting::kUniform ? "uniform" : "inverse_size"});
  }
  return markdown_table("Fitted latency model t(n) = OT / n + IT (in milliseconds).",
                        {"Scenario", "Device", "OT (ms x images)", "IT (ms)", "Residual RMS (ms)", "Points",
                         "Weighting"},
                        rows);
}

std::string quality_markdown(const ReportBundle& bundle, const std::string& metric) {
  std::vector<formats::QualityEntry> entries;
  std::copy_if(bundle.quality.begin(), bundle.quality.end(), std::back_inserter(entries),
               [&](const formats::QualityEntry& e) { return e.metric == metric; });
  const auto comparisons = first_appearance<formats::QualityEntry, std::string>(
      entries, [](const formats::QualityEntry& e) { return e.comparison; });
  const auto tasks = first_appearance<formats::QualityEntry, std::string>(
      entries, [](const formats::QualityEntry& e) { return e.task; });
  std::vector<std::string> header{""};
  header.insert(header.end(), comparisons.begin(), comparisons.end());
  std::vector<std::vector<std::string>> rows;
  for (const auto& t : tasks) {
    std::vector<std::string> row{quality_row_label(t)};
    for (const auto& c : comparisons) {
      auto it = std::find_if(entries.rbegin(), entries.rend(), [&](const formats::QualityEntry& e) {
        return e.task == t && e.comparison == c;
      });
      row.push_back(it == entries.rend() ? "-" : format_pm(it->mean, it->std, 3));
    }
    rows.push_back(std::move(row));
  }
  return markdown_table(quality_caption(metric), header, rows);
}

std::string device_slug(const DeviceConfig& device) {
  std::string raw = device.power_mode.empty() ? device.name : device.name + " " + device.power_mode;
  std::string out;
  for (char c : raw) {
    const auto uc = static_cast<unsigned char>(c);
    if (std::isalnum(uc)) {
      out.push_back(static_cast<char>(std::tolower(uc)));
    } else if (!out.empty() && out.back() != '_') {
      out.push_back('_');
    }
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  return out.empty() ? "device" : out;
}

std::string emit_plot_series(const std::vector<timing::LatencyRecord>& records,
                             const std::optional<analysis::HyperbolicFit>& fit) {
  if (records.empty()) throw Error(ErrorCode::kEmptyInput, "no latency records to plot");
  std::string out = fit ? "dataset_size,observed_ms,std_ms,fitted_ms\n" : "dataset_size,observed_ms,std_ms\n";
  std::size_t rows = 0;
  for (const auto& r : records) {
    if (!r.measured() || r.anomalous) continue;
    out += fmt::format("{},{},{}", r.dataset_size, format_fixed(r.per_image_ms, 2), format_fixed(r.std_ms, 2));
    if (fit) {
      out += fmt::format(",{}", format_fixed(analysis::predict_latency(*fit, static_cast<double>(r.dataset_size)), 4));
    }
    out += '\n';
    ++rows;
  }
  if (rows == 0) throw Error(ErrorCode::kEmptyInput, "no measured, non-anomalous latency records to plot");
  return out;
}

std::vector<RenderedFile> render_tables(const ReportBundle& bundle, Format format) {
  if (bundle.empty()) throw Error(ErrorCode::kEmptyBundle, "nothing to report");
  const bool md = format == Format::kMarkdown;
  const std::string ext = md ? ".md" : ".csv";
  std::vector<RenderedFile> files;
  std::string combined = "# Benchmark report\n";
  auto add = [&](const std::string& stem, std::string csv_text, const std::function<std::string()>& markdown) {
    if (md) {
      auto text = markdown();
      combined += "\n" + text;
      files.push_back({stem + ext, std::move(text)});
    } else {
      files.push_back({stem + ext, std::move(csv_text)});
    }
  };

  for (auto task : tasks_of(bundle.latency)) {
    const auto name = std::string(task_name(task));
    add(name + "/latency", md ? "" : formats::write_latency(for_task(bundle.latency, task)),
        [&] { return latency_markdown(bundle, task); });
  }
  for (auto task : tasks_of(bundle.energy)) {
    const auto name = std::string(task_name(task));
    add(name + "/energy", md ? "" : formats::write_energy(for_task(bundle.energy, task)),
        [&] { return energy_markdown(bundle, task); });
  }
  if (!bundle.energy.empty()) {
    add("all/energy_summary", md ? "" : summary_csv(bundle), [&] { return summary_markdown(bundle); });
  }
  if (!bundle.speedups.empty()) {
    add("all/speedups", md ? "" : formats::write_speedups(bundle.speedups),
        [&] { return speedup_markdown(bundle); });
  }
  if (!bundle.fits.empty()) {
    add("all/fits", md ? "" : formats::write_fits(bundle.fits), [&] { return fit_markdown(bundle); });
  }
  const auto metrics = first_appearance<formats::QualityEntry, std::string>(
      bundle.quality, [](const formats::QualityEntry& e) { return e.metric; });
  for (const auto& metric : metrics) {
    std::vector<formats::QualityEntry> subset;
    std::copy_if(bundle.quality.begin(), bundle.quality.end(), std::back_inserter(subset),
                 [&](const formats::QualityEntry& e) { return e.metric == metric; });
    add("all/quality_" + metric, md ? "" : formats::write_quality(subset),
        [&] { return quality_markdown(bundle, metric); });
  }

  // Plot series: one per task x device, with the device's fit when present.
  for (auto task : tasks_of(bundle.latency)) {
    const auto records = for_task(bundle.latency, task);
    for (const auto& d : devices_of(records)) {
      std::vector<timing::LatencyRecord> mine;
      std::copy_if(records.begin(), records.end(), std::back_inserter(mine),
                   [&](const timing::LatencyRecord& r) { return r.device.same_device(d); });
      std::optional<analysis::HyperbolicFit> fit;
      for (const auto& f : bundle.fits) {
        if (f.task == task && f.device.same_device(d)) fit = f.fit;
      }
      try {
        files.push_back({fmt::format("plots/{}_{}.csv", task_name(task), device_slug(d)),
                         emit_plot_series(mine, fit)});
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kEmptyInput) throw;
        spdlog::info("no plottable rows for {} on {}", task_name(task), d.label());
      }
    }
  }
  if (md) files.push_back({"report.md", std::move(combined)});
  return files;
}

void write_report(const std::vector<RenderedFile>& files, const std::filesystem::path& out_dir) {
  for (const auto& f : files) write_file_atomic(out_dir / f.path, f.content);
}

}  // namespace edgebench::report
