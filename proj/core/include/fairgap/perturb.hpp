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

#ifndef FAIRGAP_PERTURB_HPP_
#define FAIRGAP_PERTURB_HPP_

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "fairgap/document.hpp"
#include "fairgap/lexicon.hpp"

namespace fairgap {

// A token and its byte span in the source text: text[begin, end).
struct Token {
  std::string text;
  std::size_t begin = 0;
  std::size_t end = 0;

  bool operator==(const Token&) const = default;
};

// Splits text into maximal runs of letters, digits, and apostrophes.
// Bytes >= 0x80 (multi-byte UTF-8) count as letters. Everything between
// tokens is a gap; gaps plus tokens reconstruct the input byte for byte.
std::vector<Token> tokenize(const std::string& text);

struct DetectResult {
  Gender gender = Gender::Unknown;  // strict majority; Unknown on tie
  int female_count = 0;
  int male_count = 0;
};

// Counts case-insensitive indicator tokens per gender and returns the
// strict-majority gender, or Unknown on a tie (including zero-zero).
DetectResult detect_gender(const std::string& text, const GenderLexicon& lex);

// The two readings of "her": possessive ("her book" -> "his book") and
// objective ("saw her" -> "saw him").
enum class HerSense { Possessive, Objective };

// Stoplist-driven stand-in for POS tagging. "her" is objective when it
// ends the text, when something other than whitespace separates it from
// the next token (punctuation), or when the next token is in the
// stoplist (function words and common verbs that cannot head a
// possessive's noun phrase). Otherwise possessive.
// Throws Error if position is out of range or the token is not "her".
HerSense resolve_her(const std::string& text, const std::vector<Token>& tokens,
                     std::size_t position, const std::set<std::string>& stoplist);

// Callers with real POS tags can swap in their own disambiguation.
using HerResolver = std::function<HerSense(
    const std::string& text, const std::vector<Token>& tokens, std::size_t position)>;

// One token replacement, spanning text[begin, end) of the original.
struct Edit {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::string replacement;

  bool operator==(const Edit&) const = default;
};

struct PerturbResult {
  std::string text;
  std::vector<Edit> edits;
};

// The do-operator: rewrites every indicator token whose gender differs
// from `target` to its lexicon counterpart, preserving the source
// token's casing class (lower / Title / UPPER). Non-indicator bytes are
// untouched. Target must be Female or Male.
PerturbResult perturb(const std::string& text, Gender target,
                      const GenderLexicon& lex);
PerturbResult perturb(const std::string& text, Gender target,
                      const GenderLexicon& lex, const HerResolver& resolver);

// Both do-versions of one document, for causal-gap evaluation.
struct PerturbedPair {
  Document original;
  std::string female_version;
  std::string male_version;
  std::vector<Edit> female_edits;
  std::vector<Edit> male_edits;
};

PerturbedPair perturbed_pair(const Document& doc, const GenderLexicon& lex);

// Gender-swapped twin: text perturbed to the opposite gender, gender tag
// flipped, is_counterfactual set, source_id = doc.id, id = doc.id + "#cf".
// Label, confidence, and weight carry over. Throws Error for Unknown.
Document counterfactual(const Document& doc, const GenderLexicon& lex);

// Counterfactual data augmentation: every Female/Male document is
// followed (after all originals, in original order) by its counterfactual
// twin. Unknown documents pass through unaugmented.
Dataset augment_cda(const Dataset& ds, const GenderLexicon& lex);

}  // namespace fairgap

#endif  // FAIRGAP_PERTURB_HPP_
