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

#include <chrono>
#include <iostream>
#include <optional>

#include "fairgap/corpus.hpp"
#include "fairgap/debias.hpp"
#include "fairgap/perturb.hpp"
#include "fairgap/synth.hpp"
#include "commands.hpp"
#include "common.hpp"
#include "util.hpp"

namespace fairgap::tools {

int cmd_synth(const SynthOptions& options, RunManifest manifest) {
  const auto started = std::chrono::steady_clock::now();
  manifest.config_bytes = read_file(options.config_path);
  manifest.has_config = true;

  SynthConfig config = synth_config_from_json(manifest.config_bytes);
  if (options.seed_set) config.seed = options.seed;
  manifest.seeds["seed"] = config.seed;
  manifest.inputs = {options.config_path};
  manifest.outputs = {options.out_path};

  const Dataset ds = generate(config);
  atomic_write(options.out_path, dataset_to_jsonl(ds));
  finish_manifest(manifest, started, options.out_path + ".manifest.json");
  return kExitOk;
}

int cmd_perturb(const PerturbOptions& options) {
  std::optional<GenderLexicon> storage;
  const GenderLexicon& lex = resolve_lexicon(options.lexicon_path, storage);

  Dataset ds = load_jsonl(std::cin, "stdin");
  for (Document& doc : ds.docs) {
    if (options.target == "flip") {
      // Tag-driven counterfactual; untagged documents pass through.
      if (doc.gender == Gender::Unknown) continue;
      const Gender to =
          doc.gender == Gender::Female ? Gender::Male : Gender::Female;
      doc.text = perturb(doc.text, to, lex).text;
      doc.gender = to;
    } else {
      const Gender to =
          options.target == "female" ? Gender::Female : Gender::Male;
      doc.text = perturb(doc.text, to, lex).text;
      if (doc.gender != Gender::Unknown) doc.gender = to;
    }
  }
  save_jsonl(ds, std::cout);
  return kExitOk;
}

int cmd_debias(const DebiasOptions& options, RunManifest manifest) {
  const auto started = std::chrono::steady_clock::now();
  std::optional<GenderLexicon> storage;
  const GenderLexicon& lex = resolve_lexicon(options.lexicon_path, storage);

  const DebiasPlan plan{
      debias_method_from_string(options.method),
      composition_order_from_string(options.order),
      cf_weight_strategy_from_string(options.cf_weight),
      options.seed,
  };
  manifest.seeds["seed"] = options.seed;
  manifest.inputs = {options.in_path};
  manifest.outputs = {options.out_path};

  const Dataset in = load_jsonl(options.in_path);
  const Dataset out = apply_debias(in, plan, lex);
  atomic_write(options.out_path, dataset_to_jsonl(out));
  finish_manifest(manifest, started, options.out_path + ".manifest.json");
  return kExitOk;
}

}  // namespace fairgap::tools
