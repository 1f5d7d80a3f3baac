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
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fairgap/corpus.hpp"
#include "fairgap/debias.hpp"
#include "fairgap/error.hpp"
#include "fairgap/metrics.hpp"
#include "fairgap/model.hpp"
#include "fairgap/synth.hpp"
#include "commands.hpp"
#include "common.hpp"
#include "util.hpp"

namespace fairgap::tools {

namespace {

struct PlanSpec {
  std::string name;
  DebiasPlan plan;
};

std::vector<PlanSpec> parse_plans(const nlohmann::json& cfg) {
  if (!cfg.contains("plans") || !cfg["plans"].is_array())
    throw Error("pipeline config: \"plans\" must be an array");
  std::vector<PlanSpec> specs;
  std::set<std::string> seen;
  for (const auto& entry : cfg["plans"]) {
    if (!entry.is_object())
      throw Error("pipeline config: each plan must be an object");
    PlanSpec spec;
    spec.plan.method =
        debias_method_from_string(entry.at("method").get<std::string>());
    spec.plan.order = composition_order_from_string(
        entry.value("order", std::string("resample-first")));
    spec.plan.cf_weight = cf_weight_strategy_from_string(
        entry.value("cf_weight", std::string("unit")));
    spec.plan.seed = entry.value("seed", std::uint64_t{0});
    spec.name = entry.value("name", std::string(to_string(spec.plan.method)));
    // Plan names become directory names and unquoted CSV fields.
    const bool name_ok =
        !spec.name.empty() && spec.name != "." && spec.name != ".." &&
        spec.name.find_first_not_of(
            "abcdefghijklmnopqrstuvwxyz"
            "ABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789._-") == std::string::npos;
    if (!name_ok)
      throw Error("pipeline config: bad plan name \"" + spec.name +
                  "\" (use letters, digits, '.', '_', '-')");
    if (!seen.insert(spec.name).second)
      throw Error("pipeline config: duplicate plan name \"" + spec.name +
                  "\" (set \"name\" to disambiguate)");
    specs.push_back(std::move(spec));
  }
  return specs;
}

}  // namespace

int cmd_pipeline(const PipelineOptions& options, RunManifest manifest) {
  const auto started = std::chrono::steady_clock::now();
  std::optional<GenderLexicon> storage;
  const GenderLexicon& lex = resolve_lexicon(options.lexicon_path, storage);

  manifest.config_bytes = read_file(options.config_path);
  manifest.has_config = true;
  manifest.inputs = {options.config_path};
  const std::string id = manifest.id();

  nlohmann::json cfg;
  try {
    cfg = nlohmann::json::parse(manifest.config_bytes);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(options.config_path + ": " + e.what());
  }
  if (!cfg.is_object()) throw ParseError(options.config_path + ": not an object");

  const std::vector<PlanSpec> specs = parse_plans(cfg);
  const std::filesystem::path out_dir(options.out_dir);
  if (specs.empty()) {
    finish_manifest(manifest, started, (out_dir / "manifest.json").string());
    return kExitOk;
  }

  if (!cfg.contains("dataset") || !cfg["dataset"].is_object())
    throw Error("pipeline config: \"dataset\" must be an object");
  const auto& dataset_cfg = cfg["dataset"];
  Dataset source;
  std::string source_name;
  if (dataset_cfg.contains("path")) {
    source_name = dataset_cfg["path"].get<std::string>();
    source = load_jsonl(source_name);
    manifest.inputs.push_back(source_name);
  } else if (dataset_cfg.contains("synth")) {
    const SynthConfig synth_cfg =
        synth_config_from_json(dataset_cfg["synth"].dump());
    source = generate(synth_cfg);
    source_name = "synth";
    manifest.seeds["synth_seed"] = synth_cfg.seed;
    const std::string path = (out_dir / "dataset.jsonl").string();
    atomic_write(path, dataset_to_jsonl(source));
    manifest.outputs.push_back(path);
  } else {
    throw Error("pipeline config: \"dataset\" needs \"path\" or \"synth\"");
  }

  Dataset train_set = source;
  Dataset eval_set = source;
  std::string eval_id = source_name;
  if (cfg.contains("split")) {
    const auto& split_cfg = cfg["split"];
    const std::uint64_t split_seed = split_cfg.value("seed", std::uint64_t{0});
    SplitResult parts = split(source, split_cfg.value("train", 0.8),
                              split_cfg.value("val", 0.1),
                              split_cfg.value("test", 0.1), split_seed);
    manifest.seeds["split_seed"] = split_seed;
    const std::pair<const char*, const Dataset*> part_files[] = {
        {"train.jsonl", &parts.train},
        {"val.jsonl", &parts.val},
        {"test.jsonl", &parts.test},
    };
    for (const auto& [file, part] : part_files) {
      const std::string path = (out_dir / "splits" / file).string();
      atomic_write(path, dataset_to_jsonl(*part));
      manifest.outputs.push_back(path);
    }
    train_set = std::move(parts.train);
    eval_set = std::move(parts.test);
    eval_id += "#test";
  }

  TrainConfig train_cfg;
  int min_frequency = 1;
  if (cfg.contains("train")) {
    const auto& t = cfg["train"];
    train_cfg.l2 = t.value("l2", train_cfg.l2);
    train_cfg.max_iters = t.value("max_iters", train_cfg.max_iters);
    train_cfg.tolerance = t.value("tolerance", train_cfg.tolerance);
    train_cfg.seed = t.value("seed", std::uint64_t{0});
    min_frequency = t.value("min_frequency", 1);
  }
  manifest.seeds["train_seed"] = train_cfg.seed;

  BiasReportOptions base_options;
  base_options.dataset_id = eval_id;
  if (cfg.contains("metrics")) {
    const auto& m = cfg["metrics"];
    if (m.contains("positive_class")) {
      const auto& pc = m["positive_class"];
      if (pc.is_string())
        base_options.positive_class =
            parse_positive_class(pc.get<std::string>(), source.class_names);
      else if (pc.is_number_integer())
        base_options.positive_class = parse_positive_class(
            std::to_string(pc.get<int>()), source.class_names);
      else
        throw Error("pipeline config: positive_class must be a name or index");
    }
    if (m.contains("bucket_edges"))
      base_options.bucket_edges = m["bucket_edges"].get<std::vector<double>>();
  }

  bool any_failed = false;
  bool any_missing = false;
  std::string comparison = "plan,metric,value\n";
  for (const PlanSpec& spec : specs) {
    manifest.plans.push_back({spec.name, "ok", ""});
    try {
      const std::filesystem::path plan_dir = out_dir / "plans" / spec.name;
      const Dataset debiased = apply_debias(train_set, spec.plan, lex);
      const std::string train_path = (plan_dir / "train.jsonl").string();
      atomic_write(train_path, dataset_to_jsonl(debiased));

      const Vocabulary vocab = build_vocab(debiased, min_frequency);
      const BowModel model = train(debiased, vocab, train_cfg);
      const std::string model_path = (plan_dir / "model.json").string();
      atomic_write(model_path, model_json_with_manifest(model, id));

      BiasReportOptions report_options = base_options;
      report_options.model_id = model.model_id;
      report_options.seed = spec.plan.seed;
      const BiasReport report = bias_report(model, eval_set, lex, report_options);
      any_missing |= report.has_missing();
      const std::string json_path = (plan_dir / "report.json").string();
      const std::string csv_path = (plan_dir / "report.csv").string();
      atomic_write(json_path, report_to_json(report, id));
      atomic_write(csv_path, report_to_csv(report, id));
      for (const std::string& path :
           {train_path, model_path, json_path, csv_path})
        manifest.outputs.push_back(path);

      for (int k = 0; k < kNumGapKinds; ++k)
        if (report.rms_by_kind[k])
          comparison += spec.name + ",rms_" +
                        to_string(static_cast<GapKind>(k)) + "," +
                        format_double(*report.rms_by_kind[k]) + "\n";
      comparison +=
          spec.name + ",accuracy," + format_double(report.accuracy) + "\n";
      if (report.auc)
        comparison += spec.name + ",auc," + format_double(*report.auc) + "\n";
    } catch (const std::exception& e) {
      any_failed = true;
      manifest.plans.back().status = "failed";
      manifest.plans.back().error = e.what();
    }
  }

  comparison += ",manifest_id," + id + "\n";
  const std::string comparison_path = (out_dir / "comparison.csv").string();
  atomic_write(comparison_path, comparison);
  manifest.outputs.push_back(comparison_path);
  finish_manifest(manifest, started, (out_dir / "manifest.json").string());
  return (any_failed || any_missing) ? kExitDegenerate : kExitOk;
}

}  // namespace fairgap::tools
