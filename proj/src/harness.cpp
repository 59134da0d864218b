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

#include "edgebench/harness.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <random>
#include <set>
#include <thread>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "edgebench/error.hpp"
#include "edgebench/formats.hpp"
#include "edgebench/io.hpp"
#include "edgebench/subprocess.hpp"

namespace edgebench::harness {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

InputShape default_input_shape(TaskKind task) {
  return task == TaskKind::kFundusClassification ? InputShape{224, 224, 3} : InputShape{128, 128, 3};
}

void RunnerSpec::validate() const {
  if (launch_command.empty()) throw Error(ErrorCode::kMalformedInput, "runner command is empty");
  for (auto d : input_shape) {
    if (d == 0) throw Error(ErrorCode::kMalformedInput, "input_shape components must be positive");
  }
}

void BenchPlan::validate() const {
  if (dataset_sizes.empty()) throw Error(ErrorCode::kMalformedInput, "plan has no dataset sizes");
  for (std::size_t i = 0; i < dataset_sizes.size(); ++i) {
    if (dataset_sizes[i] == 0) throw Error(ErrorCode::kMalformedInput, "dataset sizes must be positive");
    if (i > 0 && dataset_sizes[i] <= dataset_sizes[i - 1]) {
      throw Error(ErrorCode::kMalformedInput, "dataset sizes must be strictly increasing");
    }
  }
  if (repetitions < 1) throw Error(ErrorCode::kMalformedInput, "repetitions must be >= 1");
  if (batch_size < 1) throw Error(ErrorCode::kMalformedInput, "batch_size must be >= 1");
  for (auto d : input_shape) {
    if (d == 0) throw Error(ErrorCode::kMalformedInput, "input_shape components must be positive");
  }
  auto tl = timeline;
  tl.dataset_count = dataset_sizes.size();
  tl.validate();
}

namespace {

void reject_unknown(const json& j, std::initializer_list<std::string_view> allowed, std::string_view where) {
  for (const auto& [key, _] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw Error(ErrorCode::kMalformedInput, fmt::format("unknown key '{}' in {}", key, where));
    }
  }
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kMalformedInput, fmt::format("plan key '{}': {}", key, e.what()));
  }
}

}  // namespace

BenchPlan BenchPlan::from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kMalformedInput, "plan must be a JSON object");
  reject_unknown(j, {"task", "device", "dataset_sizes", "repetitions", "batch_size", "timeline",
                     "model", "input_shape", "data", "materialize_data_dir", "description"},
                 "plan");
  BenchPlan plan;
  const auto task_text = get_or<std::string>(j, "task", "");
  auto task = parse_task(task_text);
  if (!task) throw Error(ErrorCode::kMalformedInput, fmt::format("unknown task '{}'", task_text));
  plan.task = *task;
  plan.input_shape = default_input_shape(plan.task);

  const json dev = j.value("device", json::object());
  if (!dev.is_object()) throw Error(ErrorCode::kMalformedInput, "plan 'device' must be an object");
  reject_unknown(dev, {"name", "power_mode", "protocol"}, "device");
  plan.device = make_device(get_or<std::string>(dev, "name", ""), get_or<std::string>(dev, "power_mode", ""));
  if (plan.device.name.empty()) throw Error(ErrorCode::kMalformedInput, "device.name is required");
  if (dev.contains("protocol")) {
    const auto p = get_or<std::string>(dev, "protocol", "");
    auto protocol = parse_protocol(p);
    if (!protocol) throw Error(ErrorCode::kMalformedInput, fmt::format("unknown protocol '{}'", p));
    plan.device.protocol = *protocol;
  }

  plan.dataset_sizes = get_or<std::vector<std::size_t>>(j, "dataset_sizes", {});
  plan.repetitions = get_or<std::size_t>(j, "repetitions", plan.repetitions);
  plan.batch_size = get_or<std::size_t>(j, "batch_size", plan.batch_size);
  if (j.contains("timeline")) {
    const auto& tl = j.at("timeline");
    if (!tl.is_object()) throw Error(ErrorCode::kMalformedInput, "plan 'timeline' must be an object");
    reject_unknown(tl, {"pre_load_idle_s", "load_to_predict_gap_s", "has_engine_load_prelude"}, "timeline");
    plan.timeline.pre_load_idle_s = get_or<double>(tl, "pre_load_idle_s", plan.timeline.pre_load_idle_s);
    plan.timeline.load_to_predict_gap_s =
        get_or<double>(tl, "load_to_predict_gap_s", plan.timeline.load_to_predict_gap_s);
    plan.timeline.has_engine_load_prelude =
        get_or<bool>(tl, "has_engine_load_prelude", plan.timeline.has_engine_load_prelude);
  }
  plan.timeline.dataset_count = std::max<std::size_t>(1, plan.dataset_sizes.size());
  plan.model = get_or<std::string>(j, "model", "");
  if (j.contains("input_shape")) {
    const auto shape = get_or<std::vector<std::size_t>>(j, "input_shape", {});
    if (shape.size() != 3) throw Error(ErrorCode::kMalformedInput, "input_shape must have 3 entries");
    plan.input_shape = {shape[0], shape[1], shape[2]};
  }
  plan.data = get_or<std::string>(j, "data", plan.data);
  plan.materialize_data_dir = get_or<std::string>(j, "materialize_data_dir", "");
  plan.description = get_or<std::string>(j, "description", "");
  plan.validate();
  return plan;
}

json BenchPlan::to_json() const {
  json j;
  j["task"] = task_name(task);
  j["device"] = {{"name", device.name},
                 {"power_mode", device.power_mode},
                 {"protocol", protocol_name(device.protocol)}};
  j["dataset_sizes"] = dataset_sizes;
  j["repetitions"] = repetitions;
  j["batch_size"] = batch_size;
  j["timeline"] = {{"pre_load_idle_s", timeline.pre_load_idle_s},
                   {"load_to_predict_gap_s", timeline.load_to_predict_gap_s},
                   {"has_engine_load_prelude", timeline.has_engine_load_prelude}};
  j["model"] = model;
  j["input_shape"] = input_shape;
  j["data"] = data;
  if (!materialize_data_dir.empty()) j["materialize_data_dir"] = materialize_data_dir;
  if (!description.empty()) j["description"] = description;
  return j;
}

std::size_t predictions_per_dataset(const BenchPlan& plan, std::size_t dataset_size) {
  switch (plan.device.protocol) {
    case Protocol::kWholeDataset: return 1 + plan.repetitions;
    case Protocol::kBatched: return 1 + timing::batch_count(dataset_size, plan.batch_size);
    case Protocol::kElementWise: return 1 + dataset_size;
  }
  return 0;
}

std::size_t predict_count(const BenchPlan& plan, std::size_t dataset_size, std::size_t index) {
  switch (plan.device.protocol) {
    case Protocol::kWholeDataset: return dataset_size;
    case Protocol::kBatched: {
      // The warm-up repeats the first batch.
      const std::size_t batch = index == 0 ? 0 : index - 1;
      return std::min(plan.batch_size, dataset_size - batch * plan.batch_size);
    }
    case Protocol::kElementWise: return 1;
  }
  return 0;
}

json BenchResult::to_json() const {
  json j;
  j["plan"] = plan.to_json();
  j["runner_metadata"] = runner_metadata;
  j["runs"] = json::array();
  for (const auto& r : runs) {
    json run;
    run["dataset_size"] = r.run.dataset_size;
    run["wall_ms"] = r.run.wall_ms;
    run["warmup_measurements"] = 1;
    run["load_ms"] = r.load_ms;
    run["anomalous"] = r.anomalous;
    run["error"] = r.error;
    run["non_canonical_round_trip_ms"] = r.non_canonical_round_trip_ms;
    j["runs"].push_back(std::move(run));
  }
  return j;
}

namespace {

struct Reply {
  bool ok = false;
  json body;
};

// Reads and validates one reply line. `expect` is the numeric field an ok
// reply must carry ("load_ms" or "wall_ms").
Reply read_reply(Subprocess& proc, const BenchOptions& options, const char* expect, bool first) {
  auto line = proc.read_line(options.reply_timeout_s);
  if (!line) {
    if (first) {
      throw Error(ErrorCode::kRunnerLaunchFailure, "runner exited before answering the first load");
    }
    throw Error(ErrorCode::kProtocolViolation, "runner closed its output mid-protocol");
  }
  json body;
  try {
    body = json::parse(*line);
  } catch (const json::parse_error&) {
    throw Error(ErrorCode::kProtocolViolation, fmt::format("non-protocol line from runner: '{}'", *line));
  }
  if (!body.is_object() || !body.contains("ok") || !body["ok"].is_boolean()) {
    throw Error(ErrorCode::kProtocolViolation, fmt::format("reply lacks boolean 'ok': '{}'", *line));
  }
  Reply reply{body["ok"].get<bool>(), body};
  if (reply.ok) {
    if (!body.contains(expect) || !body[expect].is_number() || !(body[expect].get<double>() >= 0.0)) {
      throw Error(ErrorCode::kProtocolViolation,
                  fmt::format("ok reply without a non-negative '{}': '{}'", expect, *line));
    }
  } else if (!body.contains("error") || !body["error"].is_string()) {
    throw Error(ErrorCode::kProtocolViolation, fmt::format("error reply without 'error' text: '{}'", *line));
  }
  return reply;
}

void send(Subprocess& proc, const ordered_json& msg, bool first = false) {
  const auto text = msg.dump();
  spdlog::debug("-> {}", text);
  if (!proc.write_line(text)) {
    if (first) throw Error(ErrorCode::kRunnerLaunchFailure, "runner exited before reading the first load");
    throw Error(ErrorCode::kProtocolViolation, "runner closed its input");
  }
}

void pause(const BenchOptions& options, double seconds) {
  if (!options.sleep || seconds <= 0.0) return;
  if (options.sleeper) {
    options.sleeper(seconds);
  } else {
    std::this_thread::sleep_for(std::chrono::duration<double>(seconds));
  }
}

}  // namespace

BenchResult run_benchmark(const BenchPlan& plan, const RunnerSpec& runner, const BenchOptions& options) {
  plan.validate();
  runner.validate();

  BenchResult result;
  result.plan = plan;
  result.runner_metadata["launch_command"] = fmt::format("{}", fmt::join(runner.launch_command, " "));
  result.runner_metadata["model"] = runner.model_artifact;
  result.runner_metadata["timing_source"] = "runner-reported wall_ms";
  result.runner_metadata["device"] = plan.device.label();
  if (!plan.description.empty()) result.runner_metadata["description"] = plan.description;

  Subprocess proc(runner.launch_command);
  bool first_reply = true;
  for (std::size_t size : plan.dataset_sizes) {
    RunOutcome outcome;
    outcome.run.device = plan.device;
    outcome.run.task = plan.task;
    outcome.run.dataset_size = size;

    pause(options, plan.timeline.pre_load_idle_s);
    ordered_json load;
    load["cmd"] = "load";
    load["model"] = runner.model_artifact;
    load["input_shape"] = runner.input_shape;
    send(proc, load, first_reply);
    const auto load_reply = read_reply(proc, options, "load_ms", first_reply);
    if (first_reply) {
      for (const auto& [key, value] : load_reply.body.items()) {
        if (value.is_string() && key != "error") result.runner_metadata["runner." + key] = value.get<std::string>();
      }
    }
    first_reply = false;
    if (!load_reply.ok) {
      outcome.anomalous = true;
      outcome.error = load_reply.body["error"].get<std::string>();
      spdlog::warn("dataset {}: runner failed to load: {}", size, outcome.error);
      result.runs.push_back(std::move(outcome));
      continue;
    }
    outcome.load_ms = load_reply.body["load_ms"].get<double>();

    pause(options, plan.timeline.load_to_predict_gap_s);
    std::string data = plan.data;
    if (!plan.materialize_data_dir.empty() && plan.data == "synthetic") {
      data = write_synthetic_dataset(plan.materialize_data_dir, size, runner.input_shape).string();
    }
    const std::size_t total = predictions_per_dataset(plan, size);
    for (std::size_t k = 0; k < total; ++k) {
      ordered_json predict;
      predict["cmd"] = "predict";
      predict["n"] = predict_count(plan, size, k);
      predict["data"] = data;
      const auto t0 = std::chrono::steady_clock::now();
      send(proc, predict);
      const auto reply = read_reply(proc, options, "wall_ms", false);
      const auto t1 = std::chrono::steady_clock::now();
      if (!reply.ok) {
        outcome.anomalous = true;
        outcome.error = reply.body["error"].get<std::string>();
        spdlog::warn("dataset {}: runner reported '{}'; continuing with the next size", size, outcome.error);
        break;
      }
      outcome.run.wall_ms.push_back(reply.body["wall_ms"].get<double>());
      outcome.non_canonical_round_trip_ms.push_back(
          std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    spdlog::info("dataset {}: {} predictions recorded", size, outcome.run.wall_ms.size());
    result.runs.push_back(std::move(outcome));
  }
  ordered_json quit;
  quit["cmd"] = "quit";
  send(proc, quit);
  const int status = proc.wait();
  result.runner_metadata["exit_status"] = std::to_string(status);
  return result;
}

namespace {

std::string error_token(std::string_view text) {
  std::string out;
  for (char c : text) {
    const auto uc = static_cast<unsigned char>(c);
    out.push_back(std::isalnum(uc) ? static_cast<char>(std::tolower(uc)) : '_');
  }
  return out.empty() ? "error" : out;
}

}  // namespace

std::vector<timing::LatencyRecord> latency_records(const BenchResult& result) {
  std::vector<timing::LatencyRecord> out;
  for (const auto& r : result.runs) {
    if (r.anomalous || r.run.wall_ms.size() < 2) {
      timing::LatencyRecord rec;
      rec.task = r.run.task;
      rec.device = r.run.device;
      rec.dataset_size = r.run.dataset_size;
      rec.anomalous = true;
      rec.error = error_token(r.error.empty() ? "incomplete" : r.error);
      out.push_back(std::move(rec));
      continue;
    }
    out.push_back(timing::per_image(r.run, result.plan.batch_size));
  }
  return out;
}

std::vector<std::uint8_t> synthetic_images(std::size_t count, const InputShape& shape, std::uint64_t seed) {
  const std::size_t total = count * shape[0] * shape[1] * shape[2];
  std::vector<std::uint8_t> out(total);
  std::mt19937_64 rng(seed);
  std::size_t i = 0;
  while (i < total) {
    auto word = rng();
    for (int b = 0; b < 8 && i < total; ++b, ++i) {
      out[i] = static_cast<std::uint8_t>(word & 0xFF);
      word >>= 8;
    }
  }
  return out;
}

std::filesystem::path write_synthetic_dataset(const std::filesystem::path& dir, std::size_t count,
                                              const InputShape& shape) {
  const auto path = dir / fmt::format("synthetic_{}_{}x{}x{}.u8", count, shape[0], shape[1], shape[2]);
  const auto bytes = synthetic_images(count, shape);
  std::error_code ec;
  if (std::filesystem::exists(path, ec) && std::filesystem::file_size(path, ec) == bytes.size()) {
    return path;
  }
  write_file_atomic(path, std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
  return path;
}

namespace {

bool matches(const ReplayFilter& f, TaskKind task, const DeviceConfig& device) {
  if (f.task && *f.task != task) return false;
  if (f.device && *f.device != device.name) return false;
  if (f.power_mode && *f.power_mode != device.power_mode) return false;
  return true;
}

std::string load_fixture(const std::filesystem::path& fixture) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(fixture, ec)) {
    throw Error(ErrorCode::kFixtureNotFound, "no fixture at " + fixture.string());
  }
  return read_file(fixture);
}

}  // namespace

std::vector<timing::LatencyRecord> replay_fixture(const std::filesystem::path& fixture,
                                                  const ReplayFilter& filter) {
  const auto records = formats::parse_latency(load_fixture(fixture));
  std::vector<timing::LatencyRecord> out;
  for (const auto& r : records) {
    if (matches(filter, r.task, r.device)) out.push_back(r);
  }
  if (out.empty()) throw Error(ErrorCode::kNoMatchingRows, "no fixture rows match the filter");
  return out;
}

std::vector<analysis::EnergyRecord> replay_energy_fixture(const std::filesystem::path& fixture,
                                                          const ReplayFilter& filter) {
  const auto records = formats::parse_energy(load_fixture(fixture));
  std::vector<analysis::EnergyRecord> out;
  for (const auto& r : records) {
    if (matches(filter, r.task, r.device)) out.push_back(r);
  }
  if (out.empty()) throw Error(ErrorCode::kNoMatchingRows, "no fixture rows match the filter");
  return out;
}

std::vector<AlignedDataset> align_trace(const BenchPlan& plan, const trace::PowerTrace& power,
                                        const trace::SegmentationConfig& config,
                                        const trace::TrimPolicy& trim) {
  auto timeline = plan.timeline;
  timeline.dataset_count = plan.dataset_sizes.size();
  timeline.validate();
  const auto windows = trace::detect_phases(power, timeline, config);
  const auto plateaus = trace::inference_windows(windows);
  if (plateaus.empty()) throw SegmentationError(0, "no inference plateaus found in the trace");
  if (plateaus.size() != plan.dataset_sizes.size()) {
    throw Error(ErrorCode::kCountMismatch,
                fmt::format("plan has {} datasets but the trace shows {} inference plateaus",
                            plan.dataset_sizes.size(), plateaus.size()));
  }
  std::vector<AlignedDataset> out;
  for (std::size_t i = 0; i < plateaus.size(); ++i) {
    out.push_back({plan.dataset_sizes[i], plateaus[i], trace::mean_stable_power(power, plateaus[i], trim)});
  }
  return out;
}

std::vector<AlignedDataset> align_trace(const BenchResult& result, const trace::PowerTrace& power,
                                        const trace::SegmentationConfig& config,
                                        const trace::TrimPolicy& trim) {
  return align_trace(result.plan, power, config, trim);
}

std::vector<analysis::EnergyRecord> energy_records(const BenchPlan& plan,
                                                   const std::vector<AlignedDataset>& aligned,
                                                   const std::vector<timing::LatencyRecord>& latency) {
  std::vector<analysis::EnergyRecord> out;
  for (const auto& a : aligned) {
    auto it = std::find_if(latency.begin(), latency.end(), [&](const timing::LatencyRecord& r) {
      return r.dataset_size == a.dataset_size && r.task == plan.task && r.device.same_device(plan.device) &&
             r.measured() && !r.anomalous;
    });
    if (it == latency.end()) {
      spdlog::warn("no latency for dataset size {}; skipping its energy", a.dataset_size);
      continue;
    }
    analysis::EnergyRecord rec;
    rec.task = plan.task;
    rec.device = plan.device;
    rec.row.dataset_size = a.dataset_size;
    rec.row.mean_power_w = a.power.mean_watts;
    rec.row.power_std_w = a.power.std_watts;
    rec.row.energy_mj = analysis::image_energy(a.power.mean_watts, it->per_image_ms);
    out.push_back(rec);
  }
  return out;
}

}  // namespace edgebench::harness
