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

#include "fairgap/lexicon.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "fairgap/error.hpp"

namespace fairgap {

namespace {

std::string lowercase(std::string s) {
  for (char& c : s)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

Gender opposite(Gender g) {
  return g == Gender::Female ? Gender::Male : Gender::Female;
}

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(s);
  while (std::getline(in, part, sep)) parts.push_back(part);
  return parts;
}

std::set<std::string> parse_stoplist(std::istream& in) {
  std::set<std::string> stoplist;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    stoplist.insert(lowercase(line));
  }
  return stoplist;
}

}  // namespace

const GenderLexicon& GenderLexicon::builtin() {
  static const GenderLexicon instance = [] {
    std::istringstream rules(detail::kBuiltinLexiconTsv);
    GenderLexicon lex = GenderLexicon::parse(rules, "<builtin lexicon>");
    std::istringstream stop(detail::kBuiltinHerStoplist);
    lex.set_her_stoplist(parse_stoplist(stop));
    return lex;
  }();
  return instance;
}

GenderLexicon GenderLexicon::from_tsv(const std::string& rules_path) {
  std::ifstream in(rules_path);
  if (!in) throw Error("cannot open lexicon: " + rules_path);
  GenderLexicon lex = parse(in, rules_path);
  // Keep the builtin resolver stoplist unless the caller supplies one.
  lex.set_her_stoplist(builtin().her_stoplist());
  return lex;
}

GenderLexicon GenderLexicon::from_tsv(const std::string& rules_path,
                                      const std::string& stoplist_path) {
  std::ifstream in(rules_path);
  if (!in) throw Error("cannot open lexicon: " + rules_path);
  GenderLexicon lex = parse(in, rules_path);
  std::ifstream stop(stoplist_path);
  if (!stop) throw Error("cannot open stoplist: " + stoplist_path);
  lex.set_her_stoplist(parse_stoplist(stop));
  return lex;
}

GenderLexicon GenderLexicon::parse(std::istream& rules,
                                   const std::string& origin) {
  GenderLexicon lex;
  std::string line;
  int line_no = 0;
  while (std::getline(rules, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields = split_on(line, '\t');
    if (fields.size() != 4)
      throw ParseError(origin + ":" + std::to_string(line_no) +
                       ": expected 4 tab-separated fields");
    LexiconRule rule;
    rule.source = lowercase(fields[0]);
    rule.source_gender = gender_from_string(lowercase(fields[1]));
    if (rule.source_gender == Gender::Unknown)
      throw ParseError(origin + ":" + std::to_string(line_no) +
                       ": source_gender must be female or male");
    const std::string& kind = fields[3];
    if (kind == "bi") {
      rule.kind = RuleKind::Bidirectional;
      rule.targets = {lowercase(fields[2])};
    } else if (kind == "uni") {
      rule.kind = RuleKind::Unidirectional;
      rule.targets = {lowercase(fields[2])};
    } else if (kind == "ambiguous") {
      rule.kind = RuleKind::Ambiguous;
      rule.targets = split_on(lowercase(fields[2]), '|');
      if (rule.targets.size() != 2)
        throw ParseError(origin + ":" + std::to_string(line_no) +
                         ": ambiguous rules need exactly two targets \"a|b\"");
    } else {
      throw ParseError(origin + ":" + std::to_string(line_no) +
                       ": unknown rule_kind \"" + kind + "\"");
    }
    if (rule.source.empty() || rule.targets[0].empty())
      throw ParseError(origin + ":" + std::to_string(line_no) +
                       ": empty source or target");
    lex.add_rule(rule, origin, line_no);
    if (rule.kind == RuleKind::Bidirectional) {
      LexiconRule reverse;
      reverse.source = rule.targets[0];
      reverse.source_gender = opposite(rule.source_gender);
      reverse.targets = {rule.source};
      reverse.kind = RuleKind::Bidirectional;
      lex.add_rule(reverse, origin, line_no);
    }
  }
  lex.finish(origin);
  return lex;
}

void GenderLexicon::add_rule(LexiconRule rule, const std::string& origin,
                             int line) {
  auto [it, inserted] = m_rules.emplace(rule.source, rule);
  if (!inserted)
    throw ParseError(origin + ":" + std::to_string(line) + ": token \"" +
                     rule.source + "\" appears as a source twice");
  auto& indicators = rule.source_gender == Gender::Male ? m_male_indicators
                                                        : m_female_indicators;
  indicators.insert(rule.source);
}

void GenderLexicon::finish(const std::string& origin) {
  if (m_rules.empty()) throw ParseError(origin + ": no rules");
  // Every swap must land on a token the opposite gender's detector
  // recognizes; otherwise perturbed text would drift out of the lexicon.
  for (const auto& [source, rule] : m_rules) {
    const auto& opposite_set = rule.source_gender == Gender::Male
                                   ? m_female_indicators
                                   : m_male_indicators;
    for (const std::string& target : rule.targets)
      if (!opposite_set.count(target))
        throw ParseError(origin + ": rule \"" + source + "\" targets \"" +
                         target +
                         "\" which is not an opposite-gender indicator");
  }
}

const LexiconRule* GenderLexicon::find(
    const std::string& lowercase_token) const {
  auto it = m_rules.find(lowercase_token);
  return it == m_rules.end() ? nullptr : &it->second;
}

bool GenderLexicon::is_indicator(const std::string& lowercase_token,
                                 Gender g) const {
  return indicators(g).count(lowercase_token) > 0;
}

}  // namespace fairgap
