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

#include "fairgap/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numeric>

#include <nlohmann/json.hpp>

#include "fairgap/error.hpp"
#include "fairgap/perturb.hpp"
#include "fairgap/random.hpp"

namespace fairgap {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

// Checks that the byte string is well-formed UTF-8.
bool valid_utf8(const std::string& s) {
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    std::size_t extra;
    unsigned min_cp, cp;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      extra = 1, min_cp = 0x80, cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      extra = 2, min_cp = 0x800, cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      extra = 3, min_cp = 0x10000, cp = c & 0x07;
    } else {
      return false;
    }
    if (i + extra >= s.size()) return false;
    for (std::size_t k = 1; k <= extra; ++k) {
      unsigned char cc = static_cast<unsigned char>(s[i + k]);
      if ((cc & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    if (cp < min_cp || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF))
      return false;
    i += extra + 1;
  }
  return true;
}

[[noreturn]] void fail_line(const std::string& origin, int line,
                            const std::string& message) {
  throw ParseError(origin + ":" + std::to_string(line) + ": " + message);
}

int resolve_label(const json& value, std::vector<std::string>& class_names,
                  bool classes_fixed, const std::string& origin, int line) {
  if (value.is_string()) {
    const std::string name = value.get<std::string>();
    for (std::size_t i = 0; i < class_names.size(); ++i)
      if (class_names[i] == name) return static_cast<int>(i);
    if (classes_fixed)
      fail_line(origin, line, "unknown label \"" + name + "\"");
    class_names.push_back(name);
    return static_cast<int>(class_names.size()) - 1;
  }
  if (value.is_number_integer()) {
    const long long idx = value.get<long long>();
    if (idx < 0) fail_line(origin, line, "negative label index");
    if (classes_fixed) {
      if (idx >= static_cast<long long>(class_names.size()))
        fail_line(origin, line, "label index " + std::to_string(idx) +
                                    " out of range");
    } else {
      while (static_cast<long long>(class_names.size()) <= idx)
        class_names.push_back(std::to_string(class_names.size()));
    }
    return static_cast<int>(idx);
  }
  fail_line(origin, line, "label must be a string or an integer");
}

}  // namespace

Dataset load_jsonl(const std::string& path,
                   std::optional<std::vector<std::string>> class_names) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  Dataset ds = load_jsonl(in, path, std::move(class_names));
  ds.provenance["source"] = path;
  return ds;
}

Dataset load_jsonl(std::istream& in, const std::string& origin,
                   std::optional<std::vector<std::string>> class_names) {
  Dataset ds;
  const bool classes_fixed = class_names.has_value();
  if (classes_fixed) ds.class_names = *class_names;

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::exception& e) {
      fail_line(origin, line_no, std::string("bad JSON: ") + e.what());
    }
    if (!obj.is_object()) fail_line(origin, line_no, "line is not an object");
    if (!obj.contains("text") || !obj["text"].is_string())
      fail_line(origin, line_no, "missing string field \"text\"");
    if (!obj.contains("label"))
      fail_line(origin, line_no, "missing field \"label\"");

    Document doc;
    doc.text = obj["text"].get<std::string>();
    if (!valid_utf8(doc.text))
      fail_line(origin, line_no, "text is not valid UTF-8");
    doc.label = resolve_label(obj["label"], ds.class_names, classes_fixed,
                              origin, line_no);
    doc.id = obj.contains("id") && obj["id"].is_string()
                 ? obj["id"].get<std::string>()
                 : "doc-" + std::to_string(line_no);
    if (obj.contains("gender") && !obj["gender"].is_null()) {
      if (!obj["gender"].is_string())
        fail_line(origin, line_no, "gender must be a string or null");
      try {
        doc.gender = gender_from_string(obj["gender"].get<std::string>());
      } catch (const ParseError& e) {
        fail_line(origin, line_no, e.what());
      }
    }
    if (obj.contains("gender_confidence") &&
        !obj["gender_confidence"].is_null()) {
      if (!obj["gender_confidence"].is_number())
        fail_line(origin, line_no, "gender_confidence must be a number");
      doc.gender_confidence = obj["gender_confidence"].get<double>();
    }
    if (obj.contains("weight") && !obj["weight"].is_null()) {
      if (!obj["weight"].is_number())
        fail_line(origin, line_no, "weight must be a number");
      doc.weight = obj["weight"].get<double>();
    }
    if (obj.contains("is_counterfactual") && !obj["is_counterfactual"].is_null()) {
      if (!obj["is_counterfactual"].is_boolean())
        fail_line(origin, line_no, "is_counterfactual must be a boolean");
      doc.is_counterfactual = obj["is_counterfactual"].get<bool>();
    }
    if (obj.contains("source_id") && !obj["source_id"].is_null()) {
      if (!obj["source_id"].is_string())
        fail_line(origin, line_no, "source_id must be a string");
      doc.source_id = obj["source_id"].get<std::string>();
    }
    ds.docs.push_back(std::move(doc));
  }
  if (ds.class_names.empty() && ds.docs.empty())
    throw ParseError(origin + ": empty dataset with no class names");
  validate_dataset(ds);
  return ds;
}

void save_jsonl(const Dataset& ds, std::ostream& out) {
  for (const Document& doc : ds.docs) {
    ordered_json obj;
    obj["id"] = doc.id;
    obj["text"] = doc.text;
    obj["label"] = ds.class_names[doc.label];
    if (doc.gender == Gender::Unknown)
      obj["gender"] = nullptr;
    else
      obj["gender"] = to_string(doc.gender);
    obj["gender_confidence"] = doc.gender_confidence;
    obj["weight"] = doc.weight;
    if (doc.is_counterfactual) obj["is_counterfactual"] = true;
    if (!doc.source_id.empty()) obj["source_id"] = doc.source_id;
    out << obj.dump() << '\n';
  }
}

void save_jsonl(const Dataset& ds, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  save_jsonl(ds, out);
  if (!out) throw Error("write failed: " + path);
}

std::vector<JigsawRecord> load_jigsaw_jsonl(std::istream& in,
                                            const std::string& origin) {
  std::vector<JigsawRecord> records;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::exception& e) {
      fail_line(origin, line_no, std::string("bad JSON: ") + e.what());
    }
    for (const char* field : {"text", "toxicity", "female", "male"})
      if (!obj.contains(field))
        fail_line(origin, line_no,
                  std::string("missing field \"") + field + "\"");
    JigsawRecord rec;
    rec.id = obj.contains("id") && obj["id"].is_string()
                 ? obj["id"].get<std::string>()
                 : "doc-" + std::to_string(line_no);
    rec.text = obj["text"].get<std::string>();
    rec.toxicity = obj["toxicity"].get<double>();
    rec.female_score = obj["female"].get<double>();
    rec.male_score = obj["male"].get<double>();
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<JigsawRecord> load_jigsaw_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return load_jigsaw_jsonl(in, path);
}

Dataset binarize_jigsaw_style(const std::vector<JigsawRecord>& records,
                              double toxicity_threshold,
                              double agreement_gap) {
  Dataset ds;
  ds.class_names = {"nontoxic", "toxic"};
  for (const JigsawRecord& rec : records) {
    for (double score : {rec.toxicity, rec.female_score, rec.male_score})
      if (!(score >= 0.0 && score <= 1.0))
        throw Error("record " + rec.id + " has a score outside [0,1]");
    if (std::fabs(rec.female_score - rec.male_score) <= agreement_gap)
      continue;
    Document doc;
    doc.id = rec.id;
    doc.text = rec.text;
    doc.label = rec.toxicity > toxicity_threshold ? 1 : 0;
    doc.gender = rec.female_score > rec.male_score ? Gender::Female
                                                   : Gender::Male;
    doc.gender_confidence = std::max(rec.female_score, rec.male_score);
    ds.docs.push_back(std::move(doc));
  }
  ds.provenance["binarize.toxicity_threshold"] =
      std::to_string(toxicity_threshold);
  ds.provenance["binarize.agreement_gap"] = std::to_string(agreement_gap);
  validate_dataset(ds);
  return ds;
}

Dataset mask_label_tokens(const Dataset& ds,
                          const std::map<int, std::vector<std::string>>& label_terms,
                          const std::string& mask) {
  // Pre-tokenize every term once, lowercased.
  std::map<int, std::vector<std::vector<std::string>>> term_tokens;
  for (const auto& [cls, terms] : label_terms) {
    for (const std::string& term : terms) {
      std::vector<std::string> seq;
      for (const Token& t : tokenize(term)) {
        std::string low = t.text;
        for (char& c : low) c = static_cast<char>(std::tolower(
            static_cast<unsigned char>(c)));
        seq.push_back(std::move(low));
      }
      if (!seq.empty()) term_tokens[cls].push_back(std::move(seq));
    }
  }

  Dataset out = ds;
  for (Document& doc : out.docs) {
    auto it = term_tokens.find(doc.label);
    if (it == term_tokens.end()) continue;
    const auto& sequences = it->second;

    std::vector<Token> tokens = tokenize(doc.text);
    std::vector<std::string> lowered(tokens.size());
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      lowered[i] = tokens[i].text;
      for (char& c : lowered[i])
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }

    // Greedy left-to-right, longest term first at each position. The
    // replacement covers the whole matched token run, gaps included.
    std::string rebuilt;
    std::size_t cursor = 0;  // byte position in the original text
    std::size_t i = 0;
    while (i < tokens.size()) {
      std::size_t best_len = 0;
      for (const auto& seq : sequences) {
        if (seq.size() <= best_len || i + seq.size() > tokens.size()) continue;
        bool match = true;
        for (std::size_t k = 0; k < seq.size(); ++k)
          if (lowered[i + k] != seq[k]) {
            match = false;
            break;
          }
        if (match) best_len = seq.size();
      }
      if (best_len == 0) {
        ++i;
        continue;
      }
      rebuilt.append(doc.text, cursor, tokens[i].begin - cursor);
      rebuilt.append(mask);
      cursor = tokens[i + best_len - 1].end;
      i += best_len;
    }
    rebuilt.append(doc.text, cursor, std::string::npos);
    doc.text = std::move(rebuilt);
  }
  return out;
}

SplitResult split(const Dataset& ds, double train_fraction,
                  double val_fraction, double test_fraction,
                  std::uint64_t seed) {
  if (!(train_fraction > 0.0) || !(val_fraction > 0.0) ||
      !(test_fraction > 0.0))
    throw Error("split fractions must be positive");
  const double sum = train_fraction + val_fraction + test_fraction;
  if (std::fabs(sum - 1.0) > 1e-9)
    throw Error("split fractions must sum to 1");

  std::vector<std::size_t> order(ds.docs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  rng.shuffle(order);

  const std::size_t n = ds.docs.size();
  const auto n_val = static_cast<std::size_t>(
      std::floor(static_cast<double>(n) * val_fraction));
  const auto n_test = static_cast<std::size_t>(
      std::floor(static_cast<double>(n) * test_fraction));
  const std::size_t n_train = n - n_val - n_test;

  SplitResult result;
  auto make_part = [&](std::size_t from, std::size_t count,
                       const char* name) {
    Dataset part;
    part.class_names = ds.class_names;
    part.provenance = ds.provenance;
    part.provenance["split"] = name;
    part.docs.reserve(count);
    for (std::size_t k = 0; k < count; ++k)
      part.docs.push_back(ds.docs[order[from + k]]);
    return part;
  };
  result.train = make_part(0, n_train, "train");
  result.val = make_part(n_train, n_val, "val");
  result.test = make_part(n_train + n_val, n_test, "test");
  return result;
}

JointCounts joint_counts(const Dataset& ds) {
  JointCounts counts;
  counts.cells.assign(ds.class_names.size(), {0, 0});
  counts.class_totals.assign(ds.class_names.size(), 0);
  for (const Document& doc : ds.docs) {
    if (doc.gender == Gender::Unknown) continue;
    const int g = doc.gender == Gender::Male ? 1 : 0;
    ++counts.cells[doc.label][g];
    ++counts.class_totals[doc.label];
    if (g == 0)
      ++counts.female_total;
    else
      ++counts.male_total;
    ++counts.total;
  }
  return counts;
}

}  // namespace fairgap
