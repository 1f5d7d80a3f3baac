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
//limitations under the License.

#include "fairgap/perturb.hpp"

#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "fairgap/error.hpp"
#include "fairgap/lexicon.hpp"
#include "fairgap/random.hpp"
#include "test_support.hpp"

using namespace fairgap;
using fairgap::testing::fixture_path;
using fairgap::testing::load_perturb_cases;
using fairgap::testing::make_doc;
using fairgap::testing::make_dataset;

namespace {

const GenderLexicon& lex() { return GenderLexicon::builtin(); }

std::vector<std::string> token_texts(const std::string& text) {
  std::vector<std::string> out;
  for (const Token& tok : tokenize(text)) out.push_back(tok.text);
  return out;
}

}  // namespace

TEST_CASE("tokenize keeps apostrophes inside tokens") {
  CHECK_EQ(token_texts("He's here."),
           std::vector<std::string>{"He's", "here"});
}

TEST_CASE("tokenize of empty text is empty") {
  CHECK(tokenize("").empty());
}

TEST_CASE("tokenize splits on punctuation") {
  CHECK_EQ(token_texts("Mr. Smith"), std::vector<std::string>{"Mr", "Smith"});
}

TEST_CASE("tokens and gaps reconstruct the input byte for byte") {
  const std::string samples[] = {
      "He's here.", "", "  leading and trailing  ", "a,b;c!d?e",
      "¿quién sabe?", "tabs\tand\nnewlines", "123 4'5 ''"};
  for (const std::string& text : samples) {
    CAPTURE(text);
    std::string rebuilt;
    std::size_t cursor = 0;
    for (const Token& tok : tokenize(text)) {
      CHECK_LE(cursor, tok.begin);
      CHECK_LT(tok.begin, tok.end);
      CHECK_EQ(text.substr(tok.begin, tok.end - tok.begin), tok.text);
      rebuilt += text.substr(cursor, tok.begin - cursor);
      rebuilt += tok.text;
      cursor = tok.end;
    }
    rebuilt += text.substr(cursor);
    CHECK_EQ(rebuilt, text);
  }
}

TEST_CASE("detect_gender counts indicators case-insensitively") {
  const DetectResult r = detect_gender("She wrote her thesis", lex());
  CHECK_EQ(r.gender, Gender::Female);
  CHECK_EQ(r.female_count, 2);
  CHECK_EQ(r.male_count, 0);
}

TEST_CASE("detect_gender returns Unknown on a tie") {
  const DetectResult r = detect_gender("He met her", lex());
  CHECK_EQ(r.gender, Gender::Unknown);
  CHECK_EQ(r.female_count, 1);
  CHECK_EQ(r.male_count, 1);
}

TEST_CASE("detect_gender takes the strict majority") {
  const DetectResult r = detect_gender(
      "Mr Jones said he and his wife were glad when she replied", lex());
  CHECK_EQ(r.gender, Gender::Male);
  CHECK_EQ(r.male_count, 3);
  CHECK_EQ(r.female_count, 1);
}

TEST_CASE("resolve_her reads a following noun as possessive") {
  const std::string text = "praised her work";
  const auto tokens = tokenize(text);
  CHECK_EQ(resolve_her(text, tokens, 1, lex().her_stoplist()),
           HerSense::Possessive);
}

TEST_CASE("resolve_her reads sentence-final her as objective") {
  const std::string text = "I saw her.";
  const auto tokens = tokenize(text);
  CHECK_EQ(resolve_her(text, tokens, 2, lex().her_stoplist()),
           HerSense::Objective);
}

TEST_CASE("resolve_her reads her before a function word as objective") {
  const std::string text = "told her that it was late";
  const auto tokens = tokenize(text);
  CHECK_EQ(resolve_her(text, tokens, 1, lex().her_stoplist()),
           HerSense::Objective);
}

TEST_CASE("resolve_her rejects bad positions and non-her tokens") {
  const std::string text = "saw her";
  const auto tokens = tokenize(text);
  CHECK_THROWS_AS(resolve_her(text, tokens, 2, lex().her_stoplist()), Error);
  CHECK_THROWS_AS(resolve_her(text, tokens, 0, lex().her_stoplist()), Error);
}

TEST_CASE("perturb rewrites only indicator tokens") {
  CHECK_EQ(perturb("He is a nurse", Gender::Female, lex()).text,
           "She is a nurse");
  CHECK_EQ(perturb("She is a doctor", Gender::Female, lex()).text,
           "She is a doctor");
  CHECK_EQ(perturb("Mrs. Smith praised her work", Gender::Male, lex()).text,
           "Mr. Smith praised his work");
}

TEST_CASE("perturb rejects an Unknown target") {
  CHECK_THROWS_AS(perturb("he", Gender::Unknown, lex()), Error);
}

TEST_CASE("perturb records ascending non-overlapping edits") {
  const PerturbResult r =
      perturb("She told her mother about her.", Gender::Male, lex());
  CHECK_EQ(r.text, "He told his mother about him.");
  REQUIRE_EQ(r.edits.size(), 3);
  std::size_t last_end = 0;
  for (const Edit& e : r.edits) {
    CHECK_LE(last_end, e.begin);
    CHECK_LT(e.begin, e.end);
    last_end = e.end;
  }
  CHECK_EQ(r.edits[0].replacement, "He");
  CHECK_EQ(r.edits[1].replacement, "his");
  CHECK_EQ(r.edits[2].replacement, "him");
}

TEST_CASE("perturb honors a caller-supplied her resolver") {
  const auto always_possessive = [](const std::string&,
                                    const std::vector<Token>&,
                                    std::size_t) { return HerSense::Possessive; };
  CHECK_EQ(perturb("I saw her.", Gender::Male, lex(), always_possessive).text,
           "I saw his.");
}

TEST_CASE("fixture file: perturbations, detection, and round trips") {
  const auto cases = load_perturb_cases(fixture_path("perturbation_cases.tsv"));
  REQUIRE_EQ(cases.size(), 100);
  for (const auto& c : cases) {
    CAPTURE(c.input);
    CHECK_EQ(perturb(c.input, Gender::Female, lex()).text, c.female_version);
    CHECK_EQ(perturb(c.input, Gender::Male, lex()).text, c.male_version);
    CHECK_EQ(detect_gender(c.input, lex()).gender, c.detected);
    CHECK_EQ(perturb(c.male_version, Gender::Female, lex()).text == c.input,
             c.roundtrip_mf);
    CHECK_EQ(perturb(c.female_version, Gender::Male, lex()).text == c.input,
             c.roundtrip_fm);
  }
}

TEST_CASE("fixture file covers every lexicon mapping") {
  const auto cases = load_perturb_cases(fixture_path("perturbation_cases.tsv"));
  for (const char* token : {"he", "she", "himself", "herself", "mr", "ms",
                            "mrs", "hers", "his", "him", "her"}) {
    CAPTURE(token);
    bool seen = false;
    for (const auto& c : cases)
      for (const Token& tok : tokenize(c.input)) {
        std::string low = tok.text;
        for (char& ch : low)
          ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
        if (low == token) seen = true;
      }
    CHECK(seen);
  }
}

TEST_CASE("perturbing to a gender makes detection report that gender") {
  const auto cases = load_perturb_cases(fixture_path("perturbation_cases.tsv"));
  for (const auto& c : cases) {
    const DetectResult r = detect_gender(c.input, lex());
    if (r.female_count + r.male_count == 0) continue;
    CAPTURE(c.input);
    CHECK_EQ(detect_gender(perturb(c.input, Gender::Female, lex()).text, lex())
                 .gender,
             Gender::Female);
    CHECK_EQ(
        detect_gender(perturb(c.input, Gender::Male, lex()).text, lex()).gender,
        Gender::Male);
  }
}

TEST_CASE("perturb is idempotent per target") {
  const auto cases = load_perturb_cases(fixture_path("perturbation_cases.tsv"));
  for (const auto& c : cases) {
    CAPTURE(c.input);
    for (Gender g : {Gender::Female, Gender::Male}) {
      const std::string once = perturb(c.input, g, lex()).text;
      CHECK_EQ(perturb(once, g, lex()).text, once);
    }
  }
}

TEST_CASE("round trip is exact on invertible token pools") {
  // Tokens whose two-pass rewrites are exact inverses. The lossy ones
  // (hers, mrs, and the his/him pair whose reverse depends on the her
  // resolver) are excluded; the fixture file covers those explicitly.
  const std::vector<std::string> female_pool = {"she", "She",     "SHE",
                                                "ms",  "herself", "her"};
  const std::vector<std::string> male_pool = {"he", "He", "HE", "mr",
                                              "himself"};
  const std::vector<std::string> neutral_pool = {"the",  "report", "ran",
                                                 "fast", "garden", "x9"};
  Rng rng(2026);
  for (int round = 0; round < 200; ++round) {
    const bool female_side = round % 2 == 0;
    const auto& gender_pool = female_side ? female_pool : male_pool;
    std::string text;
    const int len = 1 + static_cast<int>(rng.below(8));
    for (int i = 0; i < len; ++i) {
      if (i > 0) text += rng.bernoulli(0.2) ? ", " : " ";
      const bool gendered = rng.bernoulli(0.4);
      const auto& pool = gendered ? gender_pool : neutral_pool;
      text += pool[rng.below(pool.size())];
    }
    if (rng.bernoulli(0.5)) text += ".";
    CAPTURE(text);
    if (female_side)
      CHECK_EQ(perturb(perturb(text, Gender::Male, lex()).text, Gender::Female,
                       lex())
                   .text,
               text);
    else
      CHECK_EQ(perturb(perturb(text, Gender::Female, lex()).text, Gender::Male,
                       lex())
                   .text,
               text);
  }
}

TEST_CASE("perturbed_pair produces both do-versions") {
  const Document doc = make_doc("d1", "He met her", 0, Gender::Unknown);
  const PerturbedPair pair = perturbed_pair(doc, lex());
  CHECK_EQ(pair.female_version, "She met her");
  CHECK_EQ(pair.male_version, "He met him");
  CHECK_EQ(pair.original.id, "d1");
}

TEST_CASE("counterfactual flips text, tag, and provenance") {
  Document doc = make_doc("d7", "she leads her team", 1, Gender::Female,
                          /*weight=*/2.5, /*confidence=*/0.75);
  const Document cf = counterfactual(doc, lex());
  CHECK_EQ(cf.text, "he leads his team");
  CHECK_EQ(cf.gender, Gender::Male);
  CHECK_EQ(cf.id, "d7#cf");
  CHECK_EQ(cf.source_id, "d7");
  CHECK(cf.is_counterfactual);
  CHECK_EQ(cf.label, 1);
  CHECK_EQ(cf.weight, 2.5);
  CHECK_EQ(cf.gender_confidence, 0.75);
}

TEST_CASE("counterfactual of an indicator-free document flips the tag only") {
  const Document doc = make_doc("d8", "the report was late", 0, Gender::Male);
  const Document cf = counterfactual(doc, lex());
  CHECK_EQ(cf.text, "the report was late");
  CHECK_EQ(cf.gender, Gender::Female);
  CHECK(cf.is_counterfactual);
}

TEST_CASE("counterfactual rejects Unknown gender") {
  const Document doc = make_doc("d9", "whatever", 0, Gender::Unknown);
  CHECK_THROWS_AS(counterfactual(doc, lex()), Error);
}

TEST_CASE("augment_cda appends twins after the originals") {
  const Dataset ds = make_dataset(
      {make_doc("a", "she won", 0, Gender::Female),
       make_doc("b", "he lost", 1, Gender::Male),
       make_doc("c", "no signal", 0, Gender::Unknown)},
      {"x", "y"});
  const Dataset out = augment_cda(ds, lex());
  REQUIRE_EQ(out.docs.size(), 5);
  CHECK_EQ(out.docs[0].id, "a");
  CHECK_EQ(out.docs[1].id, "b");
  CHECK_EQ(out.docs[2].id, "c");
  CHECK_EQ(out.docs[3].id, "a#cf");
  CHECK_EQ(out.docs[4].id, "b#cf");
  CHECK_EQ(out.docs[3].text, "he won");
  CHECK_EQ(out.docs[4].text, "she lost");
  validate_dataset(out);
}

TEST_CASE("augment_cda of an empty dataset is empty") {
  Dataset ds;
  ds.class_names = {"x"};
  CHECK(augment_cda(ds, lex()).docs.empty());
}

TEST_CASE("lexicon TSV parsing builds a closed rule set") {
  std::istringstream rules(
      "# comment\n"
      "\n"
      "he\tmale\tshe\tbi\n"
      "his\tmale\ther\tuni\n"
      "him\tmale\ther\tuni\n"
      "hers\tfemale\this\tuni\n"
      "her\tfemale\this|him\tambiguous\n");
  const GenderLexicon custom = GenderLexicon::parse(rules, "inline");
  CHECK(custom.is_indicator("he", Gender::Male));
  CHECK(custom.is_indicator("she", Gender::Female));
  CHECK(custom.is_indicator("hers", Gender::Female));
  CHECK(custom.is_indicator("his", Gender::Male));
  REQUIRE_NE(custom.find("her"), nullptr);
  CHECK_EQ(custom.find("her")->kind, RuleKind::Ambiguous);
  REQUIRE_EQ(custom.find("her")->targets.size(), 2);
  CHECK_EQ(custom.find("she")->targets[0], "he");
  CHECK_EQ(custom.find("nurse"), nullptr);
}

TEST_CASE("lexicon TSV parsing rejects a swap onto a non-indicator") {
  std::istringstream rules("hers\tfemale\this\tuni\n");
  CHECK_THROWS_AS(GenderLexicon::parse(rules, "inline"), ParseError);
}
