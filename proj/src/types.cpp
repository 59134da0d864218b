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

#include "edgebench/types.hpp"

namespace edgebench {

std::string_view task_name(TaskKind task) {
  switch (task) {
    case TaskKind::kOdSegmentation: return "od_segmentation";
    case TaskKind::kOcSegmentation: return "oc_segmentation";
    case TaskKind::kFundusClassification: return "fundus_classification";
  }
  return "unknown";
}

std::optional<TaskKind> parse_task(std::string_view name) {
  for (auto t : kAllTasks) {
    if (task_name(t) == name) return t;
  }
  return std::nullopt;
}

std::string_view protocol_name(Protocol protocol) {
  switch (protocol) {
    case Protocol::kWholeDataset: return "whole_dataset";
    case Protocol::kBatched: return "batched";
    case Protocol::kElementWise: return "element_wise";
  }
  return "unknown";
}

std::optional<Protocol> parse_protocol(std::string_view name) {
  for (auto p : {Protocol::kWholeDataset, Protocol::kBatched, Protocol::kElementWise}) {
    if (protocol_name(p) == name) return p;
  }
  return std::nullopt;
}

std::string DeviceConfig::label() const {
  return power_mode.empty() ? name : name + " (" + power_mode + ")";
}

Protocol default_protocol_for(std::string_view device_name) {
  if (device_name.starts_with("Colab") || device_name.starts_with("Cloud")) {
    return Protocol::kWholeDataset;
  }
  if (device_name.starts_with("Maxwell") || device_name.starts_with("Jetson")) {
    return Protocol::kBatched;
  }
  return Protocol::kElementWise;
}

DeviceConfig make_device(std::string name, std::string power_mode) {
  DeviceConfig d;
  d.protocol = default_protocol_for(name);
  d.name = std::move(name);
  d.power_mode = std::move(power_mode);
  return d;
}

}  // namespace edgebench
