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

#ifndef FAIRGAP_DOCUMENT_HPP_
#define FAIRGAP_DOCUMENT_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fairgap {

// Gender as read off the text or the source annotations. Unknown means
// "no usable signal", not "other": documents with Unknown gender are
// carried through every pipeline stage but excluded from gap populations.
enum class Gender { Female, Male, Unknown };

const char* to_string(Gender g);

// Parses "female"/"male"/"unknown" (exact, lowercase). Throws ParseError.
Gender gender_from_string(const std::string& s);

struct Document {
  std::string id;
  std::string text;
  int label = 0;  // index into Dataset::class_names
  Gender gender = Gender::Unknown;
  // How confident the gender annotation is, in [0, 1]. Annotator-derived
  // corpora carry real values; everything else defaults to 1.0.
  double gender_confidence = 1.0;
  double weight = 1.0;
  bool is_counterfactual = false;
  // For resampled or counterfactual documents: id of the document this
  // one was derived from. Empty for originals.
  std::string source_id;

  bool operator==(const Document&) const = default;
};

struct Dataset {
  std::vector<Document> docs;
  std::vector<std::string> class_names;
  // Free-form notes about where the data came from and what was done to
  // it (loader path, binarization thresholds, debias method, ...).
  std::map<std::string, std::string> provenance;

  std::size_t size() const { return docs.size(); }
  int num_classes() const { return static_cast<int>(class_names.size()); }
};

// Checks the dataset invariants: unique non-empty ids, labels within
// class_names, strictly positive finite weights, and source_id present on
// every counterfactual document. Throws Error with the first violation.
void validate_dataset(const Dataset& ds);

}  // namespace fairgap

#endif  // FAIRGAP_DOCUMENT_HPP_
