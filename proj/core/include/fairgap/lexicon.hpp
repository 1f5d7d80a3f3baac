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

#ifndef FAIRGAP_LEXICON_HPP_
#define FAIRGAP_LEXICON_HPP_

#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "fairgap/document.hpp"

namespace fairgap {

enum class RuleKind { Bidirectional, Unidirectional, Ambiguous };

// One swap rule, keyed by its lowercase source token. Bidirectional rules
// are stored twice, once per direction. Ambiguous rules carry two targets
// and defer the choice to a resolver (see perturb.hpp).
struct LexiconRule {
  std::string source;
  Gender source_gender = Gender::Unknown;
  std::vector<std::string> targets;  // one entry unless kind == Ambiguous
  RuleKind kind = RuleKind::Unidirectional;
};

// The explicit-gender-indicator vocabulary and its swap mapping. This is
// what the do-operator rewrites and what detect_gender counts. Immutable
// after construction; safe to share across threads.
class GenderLexicon {
 public:
  // The default mapping shipped with the library: he<->she,
  // himself<->herself, mr<->ms, hers->his, his->her, him->her, mrs->mr,
  // and the ambiguous her->{his, him}, plus the "her" resolver stoplist.
  static const GenderLexicon& builtin();

  // Parses the TSV rule format, one rule per line:
  //   source<TAB>source_gender<TAB>target<TAB>rule_kind
  // rule_kind ∈ {bi, uni, ambiguous}; bi entries expand to both
  // directions; ambiguous targets are written "a|b". Lines starting with
  // '#' and blank lines are skipped. The stoplist is one token per line.
  static GenderLexicon from_tsv(const std::string& rules_path);
  static GenderLexicon from_tsv(const std::string& rules_path,
                                const std::string& stoplist_path);
  static GenderLexicon parse(std::istream& rules, const std::string& origin);

  // Lookup by lowercase token. Returns nullptr for non-indicators.
  const LexiconRule* find(const std::string& lowercase_token) const;

  bool is_indicator(const std::string& lowercase_token, Gender g) const;

  const std::set<std::string>& indicators(Gender g) const {
    return g == Gender::Male ? m_male_indicators : m_female_indicators;
  }

  // Function words that, when following "her", mark it as the objective
  // pronoun rather than a possessive (see resolve_her).
  const std::set<std::string>& her_stoplist() const { return m_her_stoplist; }
  void set_her_stoplist(std::set<std::string> stoplist) {
    m_her_stoplist = std::move(stoplist);
  }

  const std::map<std::string, LexiconRule>& rules() const { return m_rules; }

 private:
  void add_rule(LexiconRule rule, const std::string& origin, int line);
  void finish(const std::string& origin);

  std::map<std::string, LexiconRule> m_rules;  // by lowercase source
  std::set<std::string> m_female_indicators;
  std::set<std::string> m_male_indicators;
  std::set<std::string> m_her_stoplist;
};

namespace detail {
// Embedded copies of core/data/lexicon.tsv and core/data/her_stoplist.txt
// so the library works without installed data files.
extern const char* const kBuiltinLexiconTsv;
extern const char* const kBuiltinHerStoplist;
}  // namespace detail

}  // namespace fairgap

#endif  // FAIRGAP_LEXICON_HPP_
