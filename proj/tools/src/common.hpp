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

#ifndef FAIRGAP_TOOLS_COMMON_HPP_
#define FAIRGAP_TOOLS_COMMON_HPP_

#include <chrono>
#include <optional>
#include <string>

#include "fairgap/corpus.hpp"
#include "fairgap/lexicon.hpp"
#include "fairgap/model.hpp"
#include "manifest.hpp"

namespace fairgap::tools {

// The builtin lexicon, or one loaded from --lexicon / FAIRGAP_LEXICON.
// `storage` owns a loaded lexicon for the caller's lifetime.
const GenderLexicon& resolve_lexicon(const std::string& path,
                                     std::optional<GenderLexicon>& storage);

// Stamps wall time and writes the manifest next to the command's outputs.
void finish_manifest(RunManifest& manifest,
                     std::chrono::steady_clock::time_point started,
                     const std::string& path);

// Audit-style commands require the model and dataset to agree on the
// class list, by name and order. Throws Error otherwise.
void check_class_match(const BowModel& model, const Dataset& ds);

std::string dataset_to_jsonl(const Dataset& ds);

// Model JSON with a manifest_id field appended, so saved models point
// back at the run that produced them.
std::string model_json_with_manifest(const BowModel& model,
                                     const std::string& manifest_id);

}  // namespace fairgap::tools

#endif  // FAIRGAP_TOOLS_COMMON_HPP_
