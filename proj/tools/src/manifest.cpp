// Copyright 2026 The fairgap Authors.
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

#include "manifest.hpp"

#include <nlohmann/json.hpp>

#include "fairgap/metrics.hpp"
#include "util.hpp"

#ifndef FAIRGAP_VERSION
#define FAIRGAP_VERSION "0.0.0"
#endif

namespace fairgap::tools {

std::string RunManifest::id() const {
  // Unit separator between arguments, record separator before the config
  // bytes, so distinct argument lists cannot collide by concatenation.
  std::string canon;
  for (const std::string& arg : command_line) {
    canon += arg;
    canon += '\x1f';
  }
  canon += '\x1e';
  if (has_config) canon += config_bytes;
  return to_hex(fnv1a64(canon));
}

std::string RunManifest::to_json() const {
  nlohmann::ordered_json obj;
  obj["manifest_id"] = id();
  obj["tool"] = "fairgap";
  obj["version"] = FAIRGAP_VERSION;
  obj["artifact_versions"] = {
      {"report_schema", BiasReport::kSchemaVersion},
      {"model_schema", 1},
  };
  obj["command"] = command;
  obj["command_line"] = command_line;
  if (has_config)
    obj["config_digest"] = to_hex(fnv1a64(config_bytes));
  else
    obj["config_digest"] = nullptr;
  obj["seeds"] = nlohmann::ordered_json::object();
  for (const auto& [name, value] : seeds) obj["seeds"][name] = value;
  obj["inputs"] = inputs;
  obj["outputs"] = outputs;
  if (!plans.empty()) {
    auto arr = nlohmann::ordered_json::array();
    for (const PlanStatus& plan : plans) {
      nlohmann::ordered_json entry;
      entry["name"] = plan.name;
      entry["status"] = plan.status;
      if (!plan.error.empty()) entry["error"] = plan.error;
      arr.push_back(std::move(entry));
    }
    obj["plans"] = std::move(arr);
  }
  obj["wall_ms"] = wall_ms;
  return obj.dump(2) + "\n";
}

}  // namespace fairgap::tools
