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

#ifndef FAIRGAP_CORPUS_HPP_
#define FAIRGAP_CORPUS_HPP_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fairgap/document.hpp"

namespace fairgap {

// Gender-by-label contingency table over the Female/Male documents of a
// dataset. Unknown-gender documents are excluded from every count.
struct JointCounts {
  // cells[y][0] = N(Female, y), cells[y][1] = N(Male, y).
  std::vector<std::array<std::int64_t, 2>> cells;
  std::vector<std::int64_t> class_totals;  // N(y)
  std::int64_t female_total = 0;           // N(Female)
  std::int64_t male_total = 0;             // N(Male)
  std::int64_t total = 0;                  // N

  std::int64_t count(Gender g, int label) const {
    return cells[label][g == Gender::Male ? 1 : 0];
  }
  std::int64_t gender_total(Gender g) const {
    return g == Gender::Male ? male_total : female_total;
  }
};

// One line of the raw toxicity-annotation schema:
// {"text": str, "toxicity": float, "female": float, "male": float}.
struct JigsawRecord {
  std::string id;
  std::string text;
  double toxicity = 0.0;
  double female_score = 0.0;
  double male_score = 0.0;
};

// Loads documents from JSONL. Each line is an object
//   {"text": str, "label": str|int, "gender": "female"|"male"|null,
//    "gender_confidence": float?, "weight": float?, "id": str?,
//    "is_counterfactual": bool?, "source_id": str?}
// String labels resolve against class_names when given, otherwise classes
// are collected in first-seen order. Integer labels index class_names
// when given; without class_names they produce decimal class names.
// Missing gender means Unknown. Missing ids become "doc-<line>".
// Throws ParseError with the offending line number.
Dataset load_jsonl(const std::string& path,
                   std::optional<std::vector<std::string>> class_names = {});
Dataset load_jsonl(std::istream& in, const std::string& origin,
                   std::optional<std::vector<std::string>> class_names = {});

// Serializes a dataset back to JSONL in document order, one object per
// line, mirroring the load_jsonl schema plus is_counterfactual/source_id.
// load(save(ds)) reproduces ds.docs exactly.
void save_jsonl(const Dataset& ds, const std::string& path);
void save_jsonl(const Dataset& ds, std::ostream& out);

std::vector<JigsawRecord> load_jigsaw_jsonl(const std::string& path);
std::vector<JigsawRecord> load_jigsaw_jsonl(std::istream& in,
                                            const std::string& origin);

// Turns raw toxicity records into a binary dataset with classes
// ["nontoxic", "toxic"]:
//   label  = toxic iff toxicity > toxicity_threshold (strict),
//   gender = the larger of female_score/male_score,
//   drop   = |female_score - male_score| <= agreement_gap (inclusive),
//   gender_confidence = max(female_score, male_score).
// Throws Error when any score lies outside [0, 1].
Dataset binarize_jigsaw_style(const std::vector<JigsawRecord>& records,
                              double toxicity_threshold = 0.5,
                              double agreement_gap = 0.5);

// Replaces whole-token, case-insensitive occurrences of a class's own
// label terms with `mask`. Terms may be multiword; they match as token
// sequences and collapse to a single mask. Other classes' terms are left
// alone. Returns a new dataset.
Dataset mask_label_tokens(const Dataset& ds,
                          const std::map<int, std::vector<std::string>>& label_terms,
                          const std::string& mask = "_");

struct SplitResult {
  Dataset train;
  Dataset val;
  Dataset test;
};

// Seeded shuffle followed by a (train, val, test) partition. Val and test
// sizes are floor(n * fraction); the remainder goes to train. Fractions
// must be positive and sum to 1 within 1e-9.
SplitResult split(const Dataset& ds, double train_fraction,
                  double val_fraction, double test_fraction,
                  std::uint64_t seed);

JointCounts joint_counts(const Dataset& ds);

}  // namespace fairgap

#endif  // FAIRGAP_CORPUS_HPP_
