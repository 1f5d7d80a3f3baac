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

#include "fairgap/perturb.hpp"

#include <cctype>

#include "fairgap/error.hpp"

namespace fairgap {

namespace {

bool is_token_byte(unsigned char c) {
  return std::isalnum(c) || c == '\'' || c >= 0x80;
}

std::string lowercase(std::string s) {
  for (char& c : s)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

enum class CaseClass { Lower, Title, Upper };

// lower / Title / UPPER (mixed case falls back to lower). UPPER needs
// more than one character so a capitalized "I" stays Title.
CaseClass case_class(const std::string& token) {
  const bool first_upper =
      !token.empty() && std::isupper(static_cast<unsigned char>(token[0]));
  bool all_alpha_upper = true;
  for (char ch : token) {
    unsigned char c = static_cast<unsigned char>(ch);
    if (std::isalpha(c) && !std::isupper(c)) all_alpha_upper = false;
  }
  if (first_upper && all_alpha_upper && token.size() > 1)
    return CaseClass::Upper;
  if (first_upper) return CaseClass::Title;
  return CaseClass::Lower;
}

std::string apply_case(const std::string& lower_token, CaseClass cls) {
  std::string out = lower_token;
  switch (cls) {
    case CaseClass::Lower:
      break;
    case CaseClass::Title:
      if (!out.empty())
        out[0] = static_cast<char>(
            std::toupper(static_cast<unsigned char>(out[0])));
      break;
    case CaseClass::Upper:
      for (char& c : out)
        c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
      break;
  }
  return out;
}

}  // namespace

std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!is_token_byte(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    std::size_t begin = i;
    while (i < text.size() && is_token_byte(static_cast<unsigned char>(text[i])))
      ++i;
    tokens.push_back(Token{text.substr(begin, i - begin), begin, i});
  }
  return tokens;
}

DetectResult detect_gender(const std::string& text, const GenderLexicon& lex) {
  DetectResult result;
  for (const Token& token : tokenize(text)) {
    const std::string low = lowercase(token.text);
    if (lex.is_indicator(low, Gender::Female)) ++result.female_count;
    if (lex.is_indicator(low, Gender::Male)) ++result.male_count;
  }
  if (result.female_count > result.male_count)
    result.gender = Gender::Female;
  else if (result.male_count > result.female_count)
    result.gender = Gender::Male;
  return result;
}

HerSense resolve_her(const std::string& text, const std::vector<Token>& tokens,
                     std::size_t position,
                     const std::set<std::string>& stoplist) {
  if (position >= tokens.size())
    throw Error("resolve_her: position out of range");
  if (lowercase(tokens[position].text) != "her")
    throw Error("resolve_her: token at position is not \"her\"");

  // Last token of the text: nothing can follow, so objective.
  if (position + 1 == tokens.size()) return HerSense::Objective;

  // Punctuation in the gap ("saw her, then"): the noun phrase is cut off.
  const Token& here = tokens[position];
  const Token& next = tokens[position + 1];
  for (std::size_t i = here.end; i < next.begin; ++i) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    if (!std::isspace(c)) return HerSense::Objective;
  }

  // A following function word, verb, or number cannot head a possessive's
  // noun phrase ("told her that", "gave her two").
  const std::string next_low = lowercase(next.text);
  if (stoplist.count(next_low)) return HerSense::Objective;
  if (std::isdigit(static_cast<unsigned char>(next_low[0])))
    return HerSense::Objective;

  return HerSense::Possessive;
}

PerturbResult perturb(const std::string& text, Gender target,
                      const GenderLexicon& lex) {
  const std::set<std::string>& stoplist = lex.her_stoplist();
  return perturb(text, target, lex,
                 [&stoplist](const std::string& t, const std::vector<Token>& toks,
                             std::size_t pos) {
                   return resolve_her(t, toks, pos, stoplist);
                 });
}

PerturbResult perturb(const std::string& text, Gender target,
                      const GenderLexicon& lex, const HerResolver& resolver) {
  if (target == Gender::Unknown)
    throw Error("perturb target must be female or male");

  const std::vector<Token> tokens = tokenize(text);
  PerturbResult result;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string low = lowercase(tokens[i].text);
    const LexiconRule* rule = lex.find(low);
    if (rule == nullptr || rule->source_gender == target) continue;

    std::string replacement_low;
    if (rule->kind == RuleKind::Ambiguous) {
      const HerSense sense = resolver(text, tokens, i);
      replacement_low = sense == HerSense::Possessive ? rule->targets[0]
                                                      : rule->targets[1];
    } else {
      replacement_low = rule->targets[0];
    }
    std::string replacement =
        apply_case(replacement_low, case_class(tokens[i].text));
    result.edits.push_back(Edit{tokens[i].begin, tokens[i].end,
                                std::move(replacement)});
  }

  // Apply the edits left to right.
  std::string rebuilt;
  rebuilt.reserve(text.size());
  std::size_t cursor = 0;
  for (const Edit& edit : result.edits) {
    rebuilt.append(text, cursor, edit.begin - cursor);
    rebuilt.append(edit.replacement);
    cursor = edit.end;
  }
  rebuilt.append(text, cursor, std::string::npos);
  result.text = std::move(rebuilt);
  return result;
}

PerturbedPair perturbed_pair(const Document& doc, const GenderLexicon& lex) {
  PerturbedPair pair;
  pair.original = doc;
  PerturbResult female = perturb(doc.text, Gender::Female, lex);
  PerturbResult male = perturb(doc.text, Gender::Male, lex);
  pair.female_version = std::move(female.text);
  pair.female_edits = std::move(female.edits);
  pair.male_version = std::move(male.text);
  pair.male_edits = std::move(male.edits);
  return pair;
}

Document counterfactual(const Document& doc, const GenderLexicon& lex) {
  if (doc.gender == Gender::Unknown)
    throw Error("counterfactual requires a Female/Male document: " + doc.id);
  const Gender target =
      doc.gender == Gender::Female ? Gender::Male : Gender::Female;
  Document twin = doc;
  twin.text = perturb(doc.text, target, lex).text;
  twin.gender = target;
  twin.is_counterfactual = true;
  twin.source_id = doc.id;
  twin.id = doc.id + "#cf";
  return twin;
}

Dataset augment_cda(const Dataset& ds, const GenderLexicon& lex) {
  Dataset out;
  out.class_names = ds.class_names;
  out.provenance = ds.provenance;
  out.provenance["cda"] = "true";
  out.docs.reserve(ds.docs.size() * 2);
  out.docs = ds.docs;
  for (const Document& doc : ds.docs) {
    if (doc.gender == Gender::Unknown) continue;
    out.docs.push_back(counterfactual(doc, lex));
  }
  return out;
}

}  // namespace fairgap
