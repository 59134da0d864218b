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

#include <algorithm>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "edgebench/error.hpp"
#include "edgebench/formats.hpp"
#include "edgebench/harness.hpp"
#include "edgebench/stats.hpp"
#include "support.hpp"

using namespace edgebench;
using namespace edgebench::harness;
using edgebench::testing::TempDir;
using nlohmann::json;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kIoError;
}

std::string error_text(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

BenchPlan small_plan(Protocol protocol, std::vector<std::size_t> sizes) {
  BenchPlan plan;
  plan.task = TaskKind::kOdSegmentation;
  plan.device = make_device("Edge TPU");
  plan.device.protocol = protocol;
  plan.dataset_sizes = std::move(sizes);
  plan.repetitions = 3;
  plan.batch_size = 10;
  plan.model = "od.tflite";
  return plan;
}

RunnerSpec mock(const std::filesystem::path& log, std::vector<std::string> extra = {}) {
  RunnerSpec spec;
  spec.launch_command = {edgebench::testing::mock_runner_path().string(), "--log", log.string()};
  spec.launch_command.insert(spec.launch_command.end(), extra.begin(), extra.end());
  spec.model_artifact = "od.tflite";
  return spec;
}

std::vector<std::string> raw_lines(const std::filesystem::path& log) {
  std::vector<std::string> out;
  std::istringstream in(edgebench::testing::slurp(log));
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<json> logged(const std::filesystem::path& log) {
  std::vector<json> out;
  for (const auto& line : raw_lines(log)) out.push_back(json::parse(line));
  return out;
}

BenchOptions no_sleep() {
  BenchOptions o;
  o.sleep = false;
  return o;
}

}  // namespace

TEST_CASE("plan JSON parses and round-trips") {
  const auto j = json::parse(R"({
    "task": "fundus_classification",
    "device": {"name": "Maxwell GPU", "power_mode": "MaxN", "protocol": "batched"},
    "dataset_sizes": [10, 20, 30],
    "repetitions": 5,
    "batch_size": 8,
    "timeline": {"pre_load_idle_s": 12, "load_to_predict_gap_s": 4, "has_engine_load_prelude": true},
    "model": "fundus.onnx",
    "input_shape": [224, 224, 3]
  })");
  const auto plan = BenchPlan::from_json(j);
  CHECK(plan.task == TaskKind::kFundusClassification);
  CHECK(plan.device.label() == "Maxwell GPU (MaxN)");
  CHECK(plan.device.protocol == Protocol::kBatched);
  CHECK(plan.dataset_sizes == std::vector<std::size_t>{10, 20, 30});
  CHECK(plan.batch_size == 8);
  CHECK(plan.timeline.pre_load_idle_s == 12.0);
  CHECK(plan.timeline.has_engine_load_prelude);
  CHECK(plan.input_shape == InputShape{224, 224, 3});
  const auto again = BenchPlan::from_json(plan.to_json());
  CHECK(again.to_json() == plan.to_json());
}

TEST_CASE("plan JSON rejects unknown keys and bad sizes") {
  CHECK(code_of([] { BenchPlan::from_json(json::parse(R"({"task":"od_segmentation","sizes":[10]})")); }) ==
        ErrorCode::kMalformedInput);
  CHECK(code_of([] {
          BenchPlan::from_json(json::parse(R"({"task":"od_segmentation","device":{"name":"X"},"dataset_sizes":[20,10]})"));
        }) == ErrorCode::kMalformedInput);
  CHECK(code_of([] {
          BenchPlan::from_json(json::parse(R"({"task":"od_segmentation","device":{"name":"X","colour":1},"dataset_sizes":[10]})"));
        }) == ErrorCode::kMalformedInput);
  CHECK(code_of([] { BenchPlan::from_json(json::parse(R"({"task":"pose","dataset_sizes":[10]})")); }) ==
        ErrorCode::kMalformedInput);
}

TEST_CASE("default input shapes") {
  CHECK(default_input_shape(TaskKind::kFundusClassification) == InputShape{224, 224, 3});
  CHECK(default_input_shape(TaskKind::kOdSegmentation) == InputShape{128, 128, 3});
}

TEST_CASE("prediction counts per protocol") {
  auto plan = small_plan(Protocol::kWholeDataset, {10});
  CHECK(predictions_per_dataset(plan, 10) == 4);
  CHECK(predict_count(plan, 10, 0) == 10);
  plan.device.protocol = Protocol::kBatched;
  CHECK(predictions_per_dataset(plan, 35) == 5);
  std::vector<std::size_t> ns;
  for (std::size_t k = 0; k < 5; ++k) ns.push_back(predict_count(plan, 35, k));
  CHECK(ns == std::vector<std::size_t>{10, 10, 10, 10, 5});
  plan.device.protocol = Protocol::kElementWise;
  CHECK(predictions_per_dataset(plan, 7) == 8);
  CHECK(predict_count(plan, 7, 3) == 1);
}

TEST_CASE("run_benchmark speaks the protocol in order") {
  TempDir dir;
  auto plan = small_plan(Protocol::kBatched, {20, 35});
  std::vector<double> slept;
  BenchOptions opts;
  opts.sleeper = [&](double s) { slept.push_back(s); };
  const auto result = run_benchmark(plan, mock(dir / "log.ndjson", {"--wall-ms", "2"}), opts);

  CHECK(slept == std::vector<double>{10, 5, 10, 5});
  const auto msgs = logged(dir / "log.ndjson");
  REQUIRE(msgs.size() == 1 + 3 + 1 + 5 + 1);
  const auto raw = raw_lines(dir / "log.ndjson");
  CHECK(raw.front() == R"({"cmd":"load","model":"od.tflite","input_shape":[128,128,3]})");
  CHECK(raw[1] == R"({"cmd":"predict","n":10,"data":"synthetic"})");
  CHECK(raw.back() == R"({"cmd":"quit"})");
  CHECK(msgs[4]["cmd"] == "load");
  std::vector<std::size_t> ns;
  for (std::size_t i = 5; i < 10; ++i) {
    CHECK(msgs[i]["cmd"] == "predict");
    ns.push_back(msgs[i]["n"].get<std::size_t>());
  }
  CHECK(ns == std::vector<std::size_t>{10, 10, 10, 10, 5});

  REQUIRE(result.runs.size() == 2);
  CHECK(result.runs[1].run.wall_ms == std::vector<double>{20, 20, 20, 20, 10});
  CHECK(result.runs[0].load_ms == 120.5);
  CHECK(result.runner_metadata.at("exit_status") == "0");
  CHECK(result.runner_metadata.at("timing_source") == "runner-reported wall_ms");

  const auto recs = latency_records(result);
  REQUIRE(recs.size() == 2);
  CHECK(recs[1].per_image_ms == doctest::Approx(2.0));
  CHECK(recs[1].std_ms == doctest::Approx(0.0));
}

TEST_CASE("warm-up time is discarded") {
  TempDir dir;
  auto plan = small_plan(Protocol::kWholeDataset, {10});
  const auto result =
      run_benchmark(plan, mock(dir / "log", {"--wall-ms", "1", "--warmup-extra-ms", "500"}), no_sleep());
  REQUIRE(result.runs[0].run.wall_ms.size() == 4);
  CHECK(result.runs[0].run.wall_ms[0] == 510.0);
  CHECK(latency_records(result)[0].per_image_ms == doctest::Approx(1.0));
}

TEST_CASE("runner errors mark a size anomalous and the run continues") {
  TempDir dir;
  auto plan = small_plan(Protocol::kWholeDataset, {10, 20});
  const auto result = run_benchmark(plan, mock(dir / "log", {"--fail-predict", "2"}), no_sleep());
  REQUIRE(result.runs.size() == 2);
  CHECK(result.runs[0].anomalous);
  CHECK(result.runs[0].error == "memory error");
  CHECK_FALSE(result.runs[1].anomalous);
  const auto recs = latency_records(result);
  CHECK(recs[0].anomalous);
  CHECK(recs[0].error == "memory_error");
  CHECK(recs[1].measured());
  const auto msgs = logged(dir / "log");
  CHECK(msgs.back()["cmd"] == "quit");
  // 3 predicts for the failed size (third fails), then a full 4 for the next.
  CHECK(msgs.size() == 1 + 3 + 1 + 4 + 1);
}

TEST_CASE("a failed load skips that size") {
  TempDir dir;
  auto plan = small_plan(Protocol::kElementWise, {3, 4});
  const auto result = run_benchmark(plan, mock(dir / "log", {"--fail-load", "0"}), no_sleep());
  CHECK(result.runs[0].anomalous);
  CHECK(result.runs[0].run.wall_ms.empty());
  CHECK(result.runs[1].run.wall_ms.size() == 5);
}

TEST_CASE("runner metadata from the first load reply is kept") {
  TempDir dir;
  auto plan = small_plan(Protocol::kElementWise, {3});
  const auto result = run_benchmark(plan, mock(dir / "log", {"--description", "coral usb"}), no_sleep());
  CHECK(result.runner_metadata.at("runner.description") == "coral usb");
  CHECK(result.to_json()["runner_metadata"]["runner.description"] == "coral usb");
}

TEST_CASE("protocol violations name the offending line") {
  TempDir dir;
  auto plan = small_plan(Protocol::kElementWise, {3});
  const auto msg = error_text([&] { run_benchmark(plan, mock(dir / "log", {"--garbage-at", "1"}), no_sleep()); });
  CHECK(msg.find("loading model... done") != std::string::npos);
  CHECK(code_of([&] { run_benchmark(plan, mock(dir / "log", {"--garbage-at", "1"}), no_sleep()); }) ==
        ErrorCode::kProtocolViolation);
}

TEST_CASE("a runner that dies at start is a launch failure") {
  TempDir dir;
  auto plan = small_plan(Protocol::kElementWise, {3});
  CHECK(code_of([&] { run_benchmark(plan, mock(dir / "log", {"--exit-at-start"}), no_sleep()); }) ==
        ErrorCode::kRunnerLaunchFailure);
  RunnerSpec missing;
  missing.launch_command = {(dir / "no-such-runner").string()};
  missing.model_artifact = "x";
  CHECK(code_of([&] { run_benchmark(plan, missing, no_sleep()); }) == ErrorCode::kRunnerLaunchFailure);
}

TEST_CASE("replaying the latency fixture") {
  const auto path = edgebench::testing::fixture_path("latency_a1.csv");
  ReplayFilter f;
  f.task = TaskKind::kOdSegmentation;
  f.device = "Edge TPU";
  const auto recs = replay_fixture(path, f);
  REQUIRE(recs.size() == 33);
  CHECK(format_pm(recs[0].per_image_ms, recs[0].std_ms, 2) == "8.80 ± 1.10");
  CHECK(formats::parse_latency(formats::write_latency(recs)).size() == 33);

  f.task = TaskKind::kFundusClassification;
  const auto fundus = replay_fixture(edgebench::testing::fixture_path("latency_a3.csv"), f);
  const auto it = std::find_if(fundus.begin(), fundus.end(), [](const auto& r) { return r.dataset_size == 1300; });
  REQUIRE(it != fundus.end());
  CHECK(it->anomalous);
  CHECK(it->measured());

  f.device = "Quantum TPU";
  CHECK(code_of([&] { replay_fixture(path, f); }) == ErrorCode::kNoMatchingRows);
  CHECK(code_of([&] { replay_fixture("/nonexistent/latency.csv", {}); }) == ErrorCode::kFixtureNotFound);
}

TEST_CASE("replaying is lossless") {
  const auto path = edgebench::testing::fixture_path("latency_a3.csv");
  CHECK(formats::write_latency(replay_fixture(path, {})) == edgebench::testing::slurp(path));
  const auto epath = edgebench::testing::fixture_path("energy_b2.csv");
  CHECK(formats::write_energy(replay_energy_fixture(epath, {})) == edgebench::testing::slurp(epath));
}

TEST_CASE("align_trace pairs plateaus with plan sizes") {
  std::mt19937_64 rng(7);
  const auto known = edgebench::testing::random_experiment(rng, 10, false);
  auto plan = small_plan(Protocol::kWholeDataset, {});
  for (std::size_t i = 1; i <= 10; ++i) plan.dataset_sizes.push_back(i * 10);
  const auto aligned = align_trace(plan, known.power);
  REQUIRE(aligned.size() == 10);
  for (std::size_t i = 0; i < 10; ++i) {
    CHECK(aligned[i].dataset_size == (i + 1) * 10);
    CHECK(aligned[i].power.mean_watts == doctest::Approx(known.inference_watts[i]).epsilon(0.02));
  }
  plan.dataset_sizes.pop_back();
  CHECK(code_of([&] { align_trace(plan, known.power); }) == ErrorCode::kCountMismatch);
}

TEST_CASE("energy from an aligned trace") {
  using edgebench::testing::Segment;
  const auto power = edgebench::testing::build_trace({{10, 2.0}, {4, 3.0}, {5, 2.0}, {12, 4.2}, {6, 2.0}});
  auto plan = small_plan(Protocol::kWholeDataset, {100});
  const auto aligned = align_trace(plan, power);
  REQUIRE(aligned.size() == 1);
  CHECK(aligned[0].power.mean_watts == doctest::Approx(4.2));
  timing::LatencyRecord lat;
  lat.task = plan.task;
  lat.device = plan.device;
  lat.dataset_size = 100;
  lat.per_image_ms = 8.18;
  const auto energy = energy_records(plan, aligned, {lat});
  REQUIRE(energy.size() == 1);
  CHECK(format_fixed(energy[0].row.energy_mj, 0) == "34");
  CHECK(energy_records(plan, aligned, {}).empty());
  CHECK(code_of([&] { align_trace(plan, edgebench::testing::build_trace({{40, 2.0}})); }) ==
        ErrorCode::kSegmentationFailure);
}

TEST_CASE("synthetic images are deterministic") {
  const auto a = synthetic_images(2, {4, 4, 3});
  CHECK(a.size() == 96);
  CHECK(a == synthetic_images(2, {4, 4, 3}));
  CHECK(a != synthetic_images(2, {4, 4, 3}, 1));
  TempDir dir;
  const auto p = write_synthetic_dataset(dir.path(), 2, {4, 4, 3});
  CHECK(p.filename() == "synthetic_2_4x4x3.u8");
  CHECK(std::filesystem::file_size(p) == 96);
}
