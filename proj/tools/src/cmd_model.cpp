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

#include <nlohmann/json.hpp>

#include "fairgap/corpus.hpp"
#include "fairgap/error.hpp"
#include "fairgap/metrics.hpp"
#include "fairgap/model.hpp"
#include "commands.hpp"
#include "common.hpp"
#include "util.hpp"

namespace fairgap::tools {

namespace {

WeightTarget weight_target_from_string(const std::string& s) {
  if (s == "female") return WeightTarget::Female;
  if (s == "male") return WeightTarget::Male;
  if (s == "both") return WeightTarget::Both;
  throw Error("unknown weight target \"" + s + "\"");
}

}  // namespace

int cmd_train(const TrainOptions& options, RunManifest manifest) {
  const auto started = std::chrono::steady_clock::now();
  manifest.seeds["seed"] = options.seed;
  manifest.inputs = {options.data_path};
  manifest.outputs = {options.out_path};

  const Dataset ds = load_jsonl(options.data_path);
  const Vocabulary vocab = build_vocab(ds, options.min_frequency);
  TrainConfig config;
  config.l2 = options.l2;
  config.max_iters = options.max_iters;
  config.tolerance = options.tolerance;
  config.seed = options.seed;
  const BowModel model = train(ds, vocab, config);

  atomic_write(options.out_path, model_json_with_manifest(model, manifest.id()));
  finish_manifest(manifest, started, options.out_path + ".manifest.json");

  if (options.format == "csv") {
    std::cout << "metric,value\n"
              << "model_id," << model.model_id << "\n"
              << "iterations," << model.meta.iterations << "\n"
              << "final_loss," << format_double(model.meta.final_loss) << "\n"
              << "grad_max_norm," << format_double(model.meta.grad_max_norm)
              << "\n";
  } else {
    nlohmann::ordered_json summary;
    summary["model_id"] = model.model_id;
    summary["iterations"] = model.meta.iterations;
    summary["final_loss"] = model.meta.final_loss;
    summary["grad_max_norm"] = model.meta.grad_max_norm;
    std::cout << summary.dump() << "\n";
  }
  return kExitOk;
}

int cmd_eval(const EvalOptions& options, RunManifest manifest) {
  const auto started = std::chrono::steady_clock::now();
  const BowModel model = load_model(options.model_path);
  const Dataset ds = load_jsonl(options.data_path);
  check_class_match(model, ds);

  const std::vector<Prediction> preds = predict_all(model, ds);
  const double acc = accuracy(preds, ds);

  if (!options.out_path.empty()) {
    std::string lines;
    for (const Prediction& pred : preds) {
      nlohmann::ordered_json obj;
      obj["doc_id"] = pred.doc_id;
      obj["predicted_class"] = model.class_names[pred.predicted_class];
      obj["scores"] = pred.scores;
      lines += obj.dump();
      lines += '\n';
    }
    manifest.inputs = {options.model_path, options.data_path};
    manifest.outputs = {options.out_path};
    atomic_write(options.out_path, lines);
    finish_manifest(manifest, started, options.out_path + ".manifest.json");
  }

  if (options.format == "csv") {
    std::cout << "metric,value\n"
              << "accuracy," << format_double(acc) << "\n"
              << "documents," << ds.docs.size() << "\n";
  } else {
    nlohmann::ordered_json summary;
    summary["accuracy"] = acc;
    summary["documents"] = ds.docs.size();
    std::cout << summary.dump() << "\n";
  }
  return kExitOk;
}

int cmd_adjust_weights(const AdjustWeightsOptions& options, RunManifest manifest) {
  const auto started = std::chrono::steady_clock::now();
  std::optional<GenderLexicon> storage;
  const GenderLexicon& lex = resolve_lexicon(options.lexicon_path, storage);

  const BowModel model = load_model(options.model_path);
  const BowModel adjusted = adjust_gender_weights(
      model, options.w, weight_target_from_string(options.which), lex);

  manifest.inputs = {options.model_path};
  manifest.outputs = {options.out_path};
  atomic_write(options.out_path,
               model_json_with_manifest(adjusted, manifest.id()));
  finish_manifest(manifest, started, options.out_path + ".manifest.json");
  return kExitOk;
}

}  // namespace fairgap::tools
