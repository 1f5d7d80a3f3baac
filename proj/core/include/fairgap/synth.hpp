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

#ifndef FAIRGAP_SYNTH_HPP_
#define FAIRGAP_SYNTH_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "fairgap/document.hpp"

namespace fairgap {

// Knobs for the synthetic corpus generator. The generator plants two
// kinds of gender signal: explicit lexicon indicators (visible to the
// do-operator) and per-gender proxy tokens "proxyfem"/"proxymal" that no
// lexicon rule touches. Proxy tokens are the controlled confounder: a
// model can pick gender up from them while causal metrics, which only
// rewrite lexicon tokens, cannot see them.
struct SynthConfig {
  int num_classes = 2;
  int docs_per_class = 1000;
  // Probability that a document of class y is Female. Empty means 0.5
  // for every class; otherwise one entry per class.
  std::vector<double> gender_skew;
  // Probability a document spells its gender with a pronoun template.
  double explicit_rate = 1.0;
  // Probability a document carries its gender's proxy token.
  double proxy_strength = 0.0;
  int content_tokens_per_class = 20;
  int doc_length = 8;  // content tokens per document
  std::uint64_t seed = 0;
};

// Validates ranges (probabilities in [0,1], counts positive, skew size
// matching num_classes when present). Throws Error.
void validate(const SynthConfig& config);

// JSON round-trip for --config files; field names match the struct.
SynthConfig synth_config_from_json(const std::string& json_text);
std::string synth_config_to_json(const SynthConfig& config);

// Generates the corpus, deterministically in the seed. Documents are
// emitted class-major ("synth-<class>-<k>"), each tagged with its
// sampled gender even when no explicit indicator was emitted. Class
// names are "class0", "class1", ...
Dataset generate(const SynthConfig& config);

}  // namespace fairgap

#endif  // FAIRGAP_SYNTH_HPP_
