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

#include "fairgap/document.hpp"

#include <cmath>
#include <unordered_set>

#include "fairgap/error.hpp"

namespace fairgap {

const char* to_string(Gender g) {
  switch (g) {
    case Gender::Female:
      return "female";
    case Gender::Male:
      return "male";
    case Gender::Unknown:
      return "unknown";
  }
  return "unknown";
}

Gender gender_from_string(const std::string& s) {
  if (s == "female") return Gender::Female;
  if (s == "male") return Gender::Male;
  if (s == "unknown") return Gender::Unknown;
  throw ParseError("invalid gender value: \"" + s + "\"");
}

void validate_dataset(const Dataset& ds) {
  if (ds.class_names.empty())
    throw Error("dataset has no class names");
  std::unordered_set<std::string> seen;
  seen.reserve(ds.docs.size());
  for (const Document& doc : ds.docs) {
    if (doc.id.empty())
      throw Error("document with empty id");
    if (!seen.insert(doc.id).second)
      throw Error("duplicate document id: " + doc.id);
    if (doc.label < 0 || doc.label >= ds.num_classes())
      throw Error("document " + doc.id + " has label out of range");
    if (!(doc.weight > 0.0) || !std::isfinite(doc.weight))
      throw Error("document " + doc.id + " has non-positive weight");
    if (!(doc.gender_confidence >= 0.0 && doc.gender_confidence <= 1.0))
      throw Error("document " + doc.id + " has gender_confidence outside [0,1]");
    if (doc.is_counterfactual && doc.source_id.empty())
      throw Error("counterfactual document " + doc.id + " lacks source_id");
  }
}

}  // namespace fairgap
