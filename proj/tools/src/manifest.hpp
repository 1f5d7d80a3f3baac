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

#ifndef FAIRGAP_TOOLS_MANIFEST_HPP_
#define FAIRGAP_TOOLS_MANIFEST_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace fairgap::tools {

// Per-plan completion record for pipeline manifests.
struct PlanStatus {
  std::string name;
  std::string status;  // "ok" or "failed"
  std::string error;   // non-empty only when failed
};

// Provenance record written next to every file-producing command's
// outputs. The id is a digest of the command line and config bytes, so a
// rerun with the same arguments produces the same id; wall time is
// recorded for the record but never enters the id.
struct RunManifest {
  std::string command;                     // subcommand name
  std::vector<std::string> command_line;   // normalized argv
  std::string config_bytes;                // raw config file content, if any
  bool has_config = false;
  std::map<std::string, std::uint64_t> seeds;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::vector<PlanStatus> plans;           // pipeline only
  std::int64_t wall_ms = 0;

  std::string id() const;
  std::string to_json() const;
};

}  // namespace fairgap::tools

#endif  // FAIRGAP_TOOLS_MANIFEST_HPP_
