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

#include "edgebench/trace.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include <fmt/format.h>

#include "edgebench/csv.hpp"
#include "edgebench/error.hpp"
#include "edgebench/stats.hpp"

namespace edgebench::trace {

std::vector<double> PowerTrace::powers() const {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(instantaneous_power(s));
  return out;
}

namespace {

[[noreturn]] void malformed(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::kMalformedLog, fmt::format("line {}: {}", line, what));
}

void check_monotonic(const std::vector<PowerSample>& samples, std::size_t i, std::size_t line) {
  if (i > 0 && !(samples[i].t > samples[i - 1].t)) {
    throw Error(ErrorCode::kNonMonotonicTimestamps,
                fmt::format("line {}: timestamp {} does not follow {}", line, samples[i].t,
                            samples[i - 1].t));
  }
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

std::vector<std::string> split_on(std::string_view line, char delim) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = line.find(delim, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(trim(line.substr(start)));
      return out;
    }
    out.emplace_back(trim(line.substr(start, pos - start)));
    start = pos + 1;
  }
}

// Seconds since midnight for "hh:mm:ss[.fff]", optionally preceded by a date.
bool parse_clock(std::string_view text, double& seconds) {
  if (auto sp = text.find_last_of(" T"); sp != std::string_view::npos) text = text.substr(sp + 1);
  const auto c1 = text.find(':');
  if (c1 == std::string_view::npos) return false;
  const auto c2 = text.find(':', c1 + 1);
  if (c2 == std::string_view::npos) return false;
  long long h = 0, m = 0;
  double s = 0.0;
  if (!parse_int(text.substr(0, c1), h) || !parse_int(text.substr(c1 + 1, c2 - c1 - 1), m) ||
      !parse_double(text.substr(c2 + 1), s)) {
    return false;
  }
  if (h < 0 || m < 0 || m >= 60 || s < 0.0 || s >= 61.0) return false;
  seconds = static_cast<double>(h * 3600 + m * 60) + s;
  return true;
}

std::optional<std::size_t> find_column(const std::vector<std::string>& header,
                                       const std::string& wanted,
                                       std::initializer_list<std::string_view> hints) {
  if (!wanted.empty()) {
    const auto w = lower(wanted);
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (lower(header[i]).find(w) != std::string::npos) return i;
    }
    return std::nullopt;
  }
  for (auto hint : hints) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (lower(header[i]).find(hint) != std::string::npos) return i;
    }
  }
  return std::nullopt;
}

double unit_scale(std::string_view header_name, double configured) {
  if (configured > 0.0) return configured;
  const auto h = lower(header_name);
  if (h.find("(ma)") != std::string::npos || h.find("[ma]") != std::string::npos ||
      h.find("_ma") != std::string::npos || h.find("(mv)") != std::string::npos ||
      h.find("[mv]") != std::string::npos || h.find("_mv") != std::string::npos) {
    return 1e-3;
  }
  return 1.0;
}

}  // namespace

PowerTrace parse_power_log(std::string_view text) {
  const CsvTable table = parse_csv(text);
  if (table.header.empty()) malformed(1, "missing header");
  if (table.header.size() != 3 || table.header[0] != "timestamp_s" ||
      table.header[1] != "voltage_V" || table.header[2] != "current_A") {
    malformed(1, fmt::format("expected header '{}'", kPowerLogHeader));
  }
  if (table.rows.empty()) throw Error(ErrorCode::kEmptyLog, "power log has no data rows");

  PowerTrace trace;
  trace.samples.reserve(table.rows.size());
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    const auto line = table.line_numbers[i];
    if (row.size() != 3) malformed(line, fmt::format("expected 3 fields, got {}", row.size()));
    PowerSample s;
    if (!parse_double(row[0], s.t) || !parse_double(row[1], s.voltage) ||
        !parse_double(row[2], s.current)) {
      malformed(line, "non-numeric field");
    }
    if (s.t < 0.0 || s.voltage < 0.0 || s.current < 0.0) malformed(line, "negative value");
    trace.samples.push_back(s);
    check_monotonic(trace.samples, i, line);
  }
  return trace;
}

std::string serialize_power_log(const PowerTrace& trace) {
  std::string out(kPowerLogHeader);
  out += '\n';
  for (const auto& s : trace.samples) {
    out += fmt::format("{},{},{}\n", s.t, s.voltage, s.current);
  }
  return out;
}

PowerTrace convert_tester_export(std::string_view text, const TesterExportFormat& format) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  std::vector<std::string_view> lines;
  for (std::size_t pos = 0; pos < text.size();) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    auto line = text.substr(pos, eol - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!trim(line).empty()) lines.push_back(line);
    pos = eol + 1;
  }
  if (lines.empty()) malformed(1, "empty tester export");

  char delim = format.delimiter;
  if (delim == '\0') {
    const auto header = lines.front();
    const auto n_semi = std::count(header.begin(), header.end(), ';');
    const auto n_tab = std::count(header.begin(), header.end(), '\t');
    const auto n_comma = std::count(header.begin(), header.end(), ',');
    delim = n_semi >= n_tab && n_semi >= n_comma && n_semi > 0 ? ';'
            : n_tab >= n_comma && n_tab > 0                     ? '\t'
                                                                : ',';
  }
  const bool decimal_comma = format.decimal_comma.value_or(delim == ';');

  const auto header = split_on(lines.front(), delim);
  const auto t_col = find_column(header, format.time_column, {"time", "date", "elapsed"});
  const auto v_col = find_column(header, format.voltage_column, {"volt", "(v)", "[v]", "vbus"});
  const auto i_col = find_column(header, format.current_column, {"curr", "(a)", "[a]", "(ma)", "ibus"});
  if (!t_col || !v_col || !i_col) {
    malformed(1, "cannot locate time/voltage/current columns in tester export header");
  }
  const double v_scale = unit_scale(header[*v_col], format.voltage_scale);
  const double i_scale = unit_scale(header[*i_col], format.current_scale);

  PowerTrace trace;
  bool clock_times = false;
  double origin = 0.0;
  double day_offset = 0.0;
  double prev_raw = 0.0;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const auto fields = split_on(lines[li], delim);
    const std::size_t line = li + 1;
    const auto need = std::max({*t_col, *v_col, *i_col});
    if (fields.size() <= need) malformed(line, "too few fields");
    auto number = [&](std::string field, double& out) {
      if (decimal_comma) std::replace(field.begin(), field.end(), ',', '.');
      return parse_double(field, out);
    };
    double raw_t = 0.0;
    if (trace.samples.empty()) {
      if (number(fields[*t_col], raw_t)) {
        clock_times = false;
      } else if (parse_clock(fields[*t_col], raw_t)) {
        clock_times = true;
      } else {
        malformed(line, "unreadable time field '" + fields[*t_col] + "'");
      }
      origin = raw_t;
    } else {
      const bool ok = clock_times ? parse_clock(fields[*t_col], raw_t) : number(fields[*t_col], raw_t);
      if (!ok) malformed(line, "unreadable time field '" + fields[*t_col] + "'");
      if (clock_times && raw_t < prev_raw) day_offset += 86400.0;
    }
    prev_raw = raw_t;
    PowerSample s;
    if (!number(fields[*v_col], s.voltage) || !number(fields[*i_col], s.current)) {
      malformed(line, "non-numeric voltage/current");
    }
    s.voltage *= v_scale;
    s.current *= i_scale;
    s.t = raw_t + day_offset - origin;
    if (s.t < 0.0 || s.voltage < 0.0 || s.current < 0.0) malformed(line, "negative value");
    trace.samples.push_back(s);
    check_monotonic(trace.samples, trace.samples.size() - 1, line);
  }
  if (trace.samples.empty()) throw Error(ErrorCode::kEmptyLog, "tester export has no data rows");
  return trace;
}

void ExperimentTimeline::validate() const {
  if (dataset_count < 1) throw Error(ErrorCode::kMalformedInput, "dataset_count must be >= 1");
  if (!(load_to_predict_gap_s >= 0.0) || !(pre_load_idle_s > load_to_predict_gap_s)) {
    throw Error(ErrorCode::kMalformedInput,
                "timeline requires pre_load_idle > load_to_predict_gap >= 0");
  }
}

std::string_view phase_kind_name(PhaseKind kind) {
  switch (kind) {
    case PhaseKind::kEngineLoad: return "engine_load";
    case PhaseKind::kIdle: return "idle";
    case PhaseKind::kDatasetLoad: return "dataset_load";
    case PhaseKind::kInference: return "inference";
  }
  return "unknown";
}

PowerLevels power_levels(const PowerTrace& trace, const SegmentationConfig& config) {
  PowerLevels lv;
  if (trace.empty()) return lv;
  auto p = trace.powers();
  std::sort(p.begin(), p.end());
  const double q = std::clamp(config.floor_quantile, 0.0, 1.0);
  lv.floor = p[static_cast<std::size_t>(std::floor(q * static_cast<double>(p.size() - 1)))];
  lv.peak = p.back();
  const double range = lv.peak - lv.floor;
  lv.load_threshold = lv.floor + config.k_load * range;
  lv.inference_threshold = lv.floor + config.k_inference * range;
  return lv;
}

namespace {

struct Span {
  std::size_t begin = 0;  // inclusive
  std::size_t end = 0;    // exclusive
};

// An active region is a maximal stretch of load-or-higher samples, with quiet
// dips shorter than the merge gap absorbed.
struct Region {
  Span span;
  std::optional<Span> inference;  // first..last inference-level sample, if long enough
};

double window_mean(const std::vector<double>& p, Span s) {
  double sum = 0.0;
  for (std::size_t i = s.begin; i < s.end; ++i) sum += p[i];
  return sum / static_cast<double>(s.end - s.begin);
}

std::vector<Region> active_regions(const PowerTrace& trace, const std::vector<double>& p,
                                   const PowerLevels& lv, const ExperimentTimeline& timeline,
                                   const SegmentationConfig& config) {
  const double merge_gap_s = config.guard_tolerance * timeline.load_to_predict_gap_s;
  const auto& s = trace.samples;

  std::vector<Span> raw;
  for (std::size_t i = 0; i < p.size();) {
    if (p[i] < lv.load_threshold) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < p.size() && p[j] >= lv.load_threshold) ++j;
    raw.push_back({i, j});
    i = j;
  }

  std::vector<Span> merged;
  for (const auto& r : raw) {
    if (!merged.empty()) {
      // Quiet time between the last active sample and the next active one.
      const double gap = s[r.begin].t - s[merged.back().end - 1].t;
      if (gap < merge_gap_s) {
        merged.back().end = r.end;
        continue;
      }
    }
    merged.push_back(r);
  }

  std::vector<Region> regions;
  for (const auto& m : merged) {
    Region region{m, std::nullopt};
    const std::size_t min_run = std::max<std::size_t>(1, config.min_inference_samples);
    // The plateau spans the sustained inference-level runs; blips shorter
    // than min_run outside them stay with the surrounding load phase.
    for (std::size_t i = m.begin; i < m.end;) {
      if (p[i] < lv.inference_threshold) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < m.end && p[j] >= lv.inference_threshold) ++j;
      if (j - i >= min_run) {
        if (!region.inference) region.inference = Span{i, j};
        region.inference->end = j;
      }
      i = j;
    }
    regions.push_back(region);
  }
  return regions;
}

}  // namespace

std::vector<PhaseWindow> detect_phases(const PowerTrace& trace, const ExperimentTimeline& timeline,
                                       const SegmentationConfig& config) {
  if (trace.empty()) throw SegmentationError(0, "empty trace");
  const auto lv = power_levels(trace, config);
  const double range = lv.peak - lv.floor;
  if (!(range > 1e-12 * std::max(1.0, std::abs(lv.peak)))) return {};

  const auto p = trace.powers();
  auto regions = active_regions(trace, p, lv, timeline, config);

  std::vector<PhaseWindow> out;
  std::size_t cursor = 0;  // first sample not yet assigned to a window
  std::size_t next_region = 0;
  if (timeline.has_engine_load_prelude) {
    if (regions.empty()) return {};
    const auto& pre = regions.front().span;
    out.push_back({PhaseKind::kEngineLoad, pre.begin, pre.end, std::nullopt});
    cursor = pre.end;
    next_region = 1;
  }

  std::size_t ordinal = 0;
  std::optional<Span> pending_load;
  for (std::size_t r = next_region; r < regions.size(); ++r) {
    const auto& region = regions[r];
    if (!region.inference) {
      // The most recent load-only region before a plateau is its dataset load.
      pending_load = region.span;
      continue;
    }
    const Span inf = *region.inference;
    Span load;
    if (inf.begin > region.span.begin) {
      // Load and inference run together (no quiet gap in between).
      load = {region.span.begin, inf.begin};
    } else if (pending_load) {
      load = *pending_load;
    } else {
      throw SegmentationError(ordinal + 1,
                              fmt::format("inference plateau at sample {} has no preceding dataset "
                                          "load",
                                          inf.begin));
    }
    if (load.begin <= cursor) {
      throw SegmentationError(ordinal + 1,
                              fmt::format("no idle samples before dataset load at sample {}",
                                          load.begin));
    }
    const Span idle{cursor, load.begin};
    if (ordinal > 0 || timeline.has_engine_load_prelude) {
      const double idle_s = trace.samples[load.begin].t - trace.samples[idle.begin].t;
      if (idle_s < config.guard_tolerance * timeline.pre_load_idle_s) {
        throw SegmentationError(ordinal + 1,
                                fmt::format("idle period before dataset {} lasts {} s, expected "
                                            "about {} s",
                                            ordinal, idle_s, timeline.pre_load_idle_s));
      }
    }
    const double load_mean = window_mean(p, load);
    const double inf_mean = window_mean(p, inf);
    if (!(inf_mean > load_mean && load_mean > lv.floor)) {
      throw SegmentationError(ordinal + 1,
                              fmt::format("dataset {}: inference mean {:.3f} W must exceed load "
                                          "mean {:.3f} W above floor {:.3f} W",
                                          ordinal, inf_mean, load_mean, lv.floor));
    }
    out.push_back({PhaseKind::kIdle, idle.begin, idle.end, ordinal});
    out.push_back({PhaseKind::kDatasetLoad, load.begin, load.end, ordinal});
    out.push_back({PhaseKind::kInference, inf.begin, inf.end, ordinal});
    cursor = inf.end;
    pending_load.reset();
    ++ordinal;
  }
  return out;
}

std::vector<PhaseWindow> segment_phases(const PowerTrace& trace, const ExperimentTimeline& timeline,
                                        const SegmentationConfig& config) {
  timeline.validate();
  const auto windows = detect_phases(trace, timeline, config);
  const auto detected = inference_windows(windows).size();
  if (detected != timeline.dataset_count) {
    throw SegmentationError(detected, fmt::format("expected {} inference plateaus, detected {}",
                                                  timeline.dataset_count, detected));
  }
  return windows;
}

std::vector<PhaseWindow> inference_windows(const std::vector<PhaseWindow>& windows) {
  std::vector<PhaseWindow> out;
  for (const auto& w : windows) {
    if (w.kind == PhaseKind::kInference) out.push_back(w);
  }
  return out;
}

std::size_t TrimPolicy::per_end(std::size_t window_length) const {
  const auto proportional =
      static_cast<std::size_t>(std::floor(fraction * static_cast<double>(window_length)));
  return std::max(min_each_end, proportional);
}

StablePower mean_stable_power(const PowerTrace& trace, const PhaseWindow& window,
                              const TrimPolicy& trim) {
  if (window.kind != PhaseKind::kInference) {
    throw Error(ErrorCode::kMalformedInput, "stable power is defined on inference windows only");
  }
  if (window.end_index > trace.size() || window.start_index > window.end_index) {
    throw Error(ErrorCode::kMalformedInput, "window lies outside the trace");
  }
  const std::size_t len = window.size();
  const std::size_t cut = trim.per_end(len);
  if (2 * cut >= len) {
    throw Error(ErrorCode::kWindowTooShort,
                fmt::format("trimming {} samples from each end of a {}-sample window leaves none",
                            cut, len));
  }
  std::vector<double> p;
  p.reserve(len - 2 * cut);
  for (std::size_t i = window.start_index + cut; i < window.end_index - cut; ++i) {
    p.push_back(instantaneous_power(trace.samples[i]));
  }
  const auto ms = mean_std(p);
  return {ms.mean, ms.std, ms.count};
}

}  // namespace edgebench::trace
