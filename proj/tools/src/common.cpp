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

#include "common.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

#include "fairgap/error.hpp"
#include "util.hpp"

namespace fairgap::tools {

const GenderLexicon& resolve_lexicon(const std::string& path,
                                     std::optional<GenderLexicon>& storage) {
  if (path.empty()) return GenderLexicon::builtin();
  storage = GenderLexicon::from_tsv(path);
  return *storage;
}

void finish_manifest(RunManifest& manifest,
                     std::chrono::steady_clock::time_point started,
                     const std::string& path) {
  manifest.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - started)
                         .count();
  atomic_write(path, manifest.to_json());
}

void check_class_match(const BowModel& model, const Dataset& ds) {
  if (model.class_names == ds.class_names) return;
  auto join = [](const std::vector<std::string>& names) {
    std::string joined;
    for (const std::string& name : names) {
      if (!joined.empty()) joined += ", ";
      joined += name;
    }
    return joined;
  };
  throw Error("model classes [" + join(model.class_names) +
              "] do not match dataset classes [" + join(ds.class_names) + "]");
}

std::string dataset_to_jsonl(const Dataset& ds) {
  std::ostringstream out;
  save_jsonl(ds, out);
  return out.str();
}

std::string model_json_with_manifest(const BowModel& model,
                                     const std::string& manifest_id) {
  auto obj = nlohmann::ordered_json::parse(model_to_json(model));
  obj["manifest_id"] = manifest_id;
  return obj.dump(2) + "\n";
}

}  // namespace fairgap::tools
