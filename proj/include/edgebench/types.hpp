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

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace edgebench {

enum class TaskKind { kOdSegmentation, kOcSegmentation, kFundusClassification };

inline constexpr std::array<TaskKind, 3> kAllTasks = {
    TaskKind::kOdSegmentation, TaskKind::kOcSegmentation, TaskKind::kFundusClassification};

std::string_view task_name(TaskKind task);  // "od_segmentation", ...
std::optional<TaskKind> parse_task(std::string_view name);

// Timing protocol: how raw wall times relate to per-image time.
enum class Protocol { kWholeDataset, kBatched, kElementWise };

std::string_view protocol_name(Protocol protocol);
std::optional<Protocol> parse_protocol(std::string_view name);

struct DeviceConfig {
  std::string name;        // "Edge TPU", "Maxwell GPU", ...
  std::string power_mode;  // "5W", "MaxN" or empty when the device has no modes
  Protocol protocol = Protocol::kElementWise;

  // Devices are identified by name and power mode; the protocol is how they
  // were measured.
  bool same_device(const DeviceConfig& other) const {
    return name == other.name && power_mode == other.power_mode;
  }
  std::string label() const;  // "Maxwell GPU (MaxN)" or "Edge TPU"
};

// Protocol the bundled measurements used for a device family: TensorFlow on
// Colab predicts whole datasets, TensorRT on the Jetson runs batches, and
// TensorFlow Lite on the Edge TPU iterates over elements.
Protocol default_protocol_for(std::string_view device_name);

DeviceConfig make_device(std::string name, std::string power_mode = {});

}  // namespace edgebench
