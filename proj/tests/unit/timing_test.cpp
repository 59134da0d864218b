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

#include "doctest.h"
#include "edgebench/error.hpp"
#include "edgebench/timing.hpp"

using namespace edgebench;
using namespace edgebench::timing;

namespace {

TimingRun make_run(Protocol protocol, std::size_t size, std::vector<double> ms) {
  TimingRun run;
  run.device = make_device("Device");
  run.device.protocol = protocol;
  run.dataset_size = size;
  run.wall_ms = std::move(ms);
  return run;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kIoError;
}

}  // namespace

TEST_CASE("whole-dataset protocol") {
  auto r = per_image_whole_dataset(make_run(Protocol::kWholeDataset, 10, {200, 100, 100, 100}));
  CHECK(r.per_image_ms == doctest::Approx(10.0));
  CHECK(r.std_ms == doctest::Approx(0.0));
  r = per_image_whole_dataset(make_run(Protocol::kWholeDataset, 20, {500, 160, 140}));
  CHECK(r.per_image_ms == doctest::Approx(7.5));
  CHECK(r.std_ms == doctest::Approx(0.5));
  CHECK(code_of([] { per_image_whole_dataset(make_run(Protocol::kWholeDataset, 10, {100})); }) ==
        ErrorCode::kTooFewRepetitions);
}

TEST_CASE("batched protocol") {
  auto r = per_image_batched(make_run(Protocol::kBatched, 20, {400, 343.0, 343.0}));
  CHECK(r.per_image_ms == doctest::Approx(34.30));
  CHECK(r.std_ms == doctest::Approx(0.0));
  r = per_image_batched(make_run(Protocol::kBatched, 30, {999, 250, 260, 250}));
  CHECK(r.per_image_ms == doctest::Approx(25.3333333333));
  CHECK(r.std_ms == doctest::Approx(0.4714045208));
  CHECK(code_of([] { per_image_batched(make_run(Protocol::kBatched, 10, {400})); }) == ErrorCode::kTooFewBatches);
}

TEST_CASE("batched protocol divides a short last batch by its size") {
  // 25 elements in batches of 10: 10, 10, 5.
  const auto r = per_image_batched(make_run(Protocol::kBatched, 25, {999, 100, 100, 50}));
  CHECK(r.per_image_ms == doctest::Approx(10.0));
  CHECK(r.std_ms == doctest::Approx(0.0));
  CHECK(batch_count(25, 10) == 3);
  CHECK(batch_count(30, 10) == 3);
  CHECK(batch_count(1, 10) == 1);
}

TEST_CASE("element-wise protocol") {
  auto r = per_image_element_wise(make_run(Protocol::kElementWise, 3, {30, 8.8, 8.8, 8.8}));
  CHECK(r.per_image_ms == doctest::Approx(8.8));
  CHECK(r.std_ms == doctest::Approx(0.0));
  r = per_image_element_wise(make_run(Protocol::kElementWise, 2, {50, 8, 10}));
  CHECK(r.per_image_ms == doctest::Approx(9.0));
  CHECK(r.std_ms == doctest::Approx(1.0));
  CHECK(code_of([] { per_image_element_wise(make_run(Protocol::kElementWise, 1, {7.5})); }) ==
        ErrorCode::kTooFewElements);
}

TEST_CASE("per_image dispatches on the device protocol and checks inputs") {
  CHECK(per_image(make_run(Protocol::kElementWise, 2, {50, 8, 10})).per_image_ms == doctest::Approx(9.0));
  CHECK(code_of([] { per_image_batched(make_run(Protocol::kElementWise, 2, {50, 8, 10})); }) ==
        ErrorCode::kMalformedInput);
  CHECK(code_of([] { per_image(make_run(Protocol::kElementWise, 2, {50, 0.0, 10})); }) ==
        ErrorCode::kMalformedInput);
  CHECK(code_of([] { per_image(make_run(Protocol::kWholeDataset, 0, {50, 10})); }) == ErrorCode::kMalformedInput);
}

TEST_CASE("device families map to their measurement protocol") {
  CHECK(default_protocol_for("Colab TPU") == Protocol::kWholeDataset);
  CHECK(default_protocol_for("Colab GPU") == Protocol::kWholeDataset);
  CHECK(default_protocol_for("Maxwell GPU") == Protocol::kBatched);
  CHECK(default_protocol_for("Edge TPU") == Protocol::kElementWise);
  CHECK(make_device("Maxwell GPU", "5W").label() == "Maxwell GPU (5W)");
  CHECK(make_device("Edge TPU").label() == "Edge TPU");
  CHECK(parse_task("fundus_classification") == TaskKind::kFundusClassification);
  CHECK_FALSE(parse_task("fundus").has_value());
  CHECK(parse_protocol("batched") == Protocol::kBatched);
}
