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

#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"
#include "manifest.hpp"

#ifndef FAIRGAP_VERSION
#define FAIRGAP_VERSION "0.0.0"
#endif

namespace {

using namespace fairgap::tools;

void add_lexicon_option(CLI::App* cmd, std::string& path) {
  cmd->add_option("--lexicon", path,
                  "Gender lexicon TSV (default: builtin rules)")
      ->envname("FAIRGAP_LEXICON");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Statistical and causal gender-bias auditing for text classifiers"};
  app.set_version_flag("--version", FAIRGAP_VERSION);
  app.require_subcommand(1);

  SynthOptions synth_opts;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic corpus");
  synth->add_option("--config", synth_opts.config_path, "Generator config JSON")
      ->required();
  synth->add_option("--out", synth_opts.out_path, "Output corpus JSONL")
      ->required();
  auto* synth_seed =
      synth->add_option("--seed", synth_opts.seed, "Overrides the config seed");

  PerturbOptions perturb_opts;
  auto* perturb = app.add_subcommand(
      "perturb", "Rewrite gender indicators in JSONL from stdin to stdout");
  perturb
      ->add_option("--target", perturb_opts.target,
                   "Rewrite direction: female, male, or flip")
      ->required()
      ->check(CLI::IsMember({"female", "male", "flip"}));
  add_lexicon_option(perturb, perturb_opts.lexicon_path);

  DebiasOptions debias_opts;
  auto* debias =
      app.add_subcommand("debias", "Apply a pre-processing debias strategy");
  debias->add_option("--in", debias_opts.in_path, "Input JSONL")->required();
  debias->add_option("--out", debias_opts.out_path, "Output JSONL")->required();
  debias->add_option("--method", debias_opts.method, "Debias strategy")
      ->required()
      ->check(CLI::IsMember(
          {"none", "os", "us", "rw", "cda", "os-cda", "us-cda", "rw-cda"}));
  debias
      ->add_option("--order", debias_opts.order,
                   "Composition order for os-cda / us-cda")
      ->check(CLI::IsMember({"resample-first", "cda-first"}));
  debias
      ->add_option("--cf-weight", debias_opts.cf_weight,
                   "Counterfactual weights under rw-cda")
      ->check(CLI::IsMember({"same", "cf-gender", "unit"}));
  debias->add_option("--seed", debias_opts.seed, "Resampling seed");
  add_lexicon_option(debias, debias_opts.lexicon_path);

  TrainOptions train_opts;
  auto* train =
      app.add_subcommand("train", "Train a bag-of-words logistic model");
  train->add_option("--data", train_opts.data_path, "Training JSONL")
      ->required();
  train->add_option("--out", train_opts.out_path, "Output model JSON")
      ->required();
  train->add_option("--l2", train_opts.l2, "L2 penalty on weights");
  train->add_option("--max-iters", train_opts.max_iters,
                    "Gradient descent iteration cap");
  train->add_option("--tol", train_opts.tolerance,
                    "Stop when the gradient max-norm falls below this");
  train->add_option("--min-freq", train_opts.min_frequency,
                    "Minimum token frequency for the vocabulary");
  train->add_option("--seed", train_opts.seed, "Recorded in model metadata");
  train->add_option("--format", train_opts.format, "Summary style on stdout")
      ->check(CLI::IsMember({"json", "csv"}));

  EvalOptions eval_opts;
  auto* eval = app.add_subcommand("eval", "Evaluate a model on a dataset");
  eval->add_option("--model", eval_opts.model_path, "Model JSON")->required();
  eval->add_option("--data", eval_opts.data_path, "Evaluation JSONL")
      ->required();
  eval->add_option("--out", eval_opts.out_path, "Predictions JSONL (optional)");
  eval->add_option("--format", eval_opts.format, "Summary style on stdout")
      ->check(CLI::IsMember({"json", "csv"}));

  AdjustWeightsOptions adjust_opts;
  auto* adjust = app.add_subcommand(
      "adjust-weights", "Scale a model's gender-indicator weights");
  adjust->add_option("--model", adjust_opts.model_path, "Model JSON")
      ->required();
  adjust->add_option("--out", adjust_opts.out_path, "Output model JSON")
      ->required();
  adjust->add_option("--w", adjust_opts.w, "Multiplier for indicator weights")
      ->required();
  adjust->add_option("--which", adjust_opts.which, "Which indicators to scale")
      ->check(CLI::IsMember({"female", "male", "both"}));
  add_lexicon_option(adjust, adjust_opts.lexicon_path);

  AuditOptions audit_opts;
  auto* audit =
      app.add_subcommand("audit", "Write a bias report for a trained model");
  audit->add_option("--model", audit_opts.model_path, "Model JSON")->required();
  audit->add_option("--data", audit_opts.data_path, "Audit JSONL")->required();
  audit->add_option("--positive-class", audit_opts.positive_class,
                    "Positive class (name or index) for the rate gaps");
  auto* audit_buckets =
      audit
          ->add_option("--buckets", audit_opts.bucket_edges,
                       "Gender-confidence bucket edges, e.g. 0.5,0.85,0.95,1.0")
          ->delimiter(',');
  audit
      ->add_flag("--default-buckets", audit_opts.default_buckets,
                 "Use the stock bucket edges 0.5,0.85,0.95,1.0")
      ->excludes(audit_buckets);
  audit->add_option("--out-dir", audit_opts.out_dir,
                    "Directory for report.json / report.csv / manifest.json");
  audit->add_option("--format", audit_opts.format,
                    "Write only this report flavor (default: both)")
      ->check(CLI::IsMember({"json", "csv"}));
  audit->add_option("--seed", audit_opts.seed, "Recorded in the report");
  add_lexicon_option(audit, audit_opts.lexicon_path);

  SweepOptions sweep_opts;
  auto* sweep = app.add_subcommand(
      "sweep", "Audit across a grid of gender-weight multipliers");
  sweep->add_option("--model", sweep_opts.model_path, "Model JSON");
  sweep->add_option("--train-data", sweep_opts.train_data_path,
                    "Train a fresh model from this JSONL instead of --model");
  sweep->add_option("--data", sweep_opts.data_path, "Audit JSONL")->required();
  sweep
      ->add_option("--w", sweep_opts.w_grid,
                   "Multiplier grid; use --w=-3,0,3 for negatives")
      ->required()
      ->delimiter(',');
  sweep->add_option("--which", sweep_opts.which, "Which indicators to scale")
      ->check(CLI::IsMember({"female", "male", "both"}));
  sweep->add_option("--positive-class", sweep_opts.positive_class,
                    "Positive class (name or index) for the rate gaps");
  sweep->add_option("--out", sweep_opts.out_path, "Output CSV path");
  sweep->add_option("--l2", sweep_opts.l2, "L2 penalty when training");
  sweep->add_option("--max-iters", sweep_opts.max_iters,
                    "Iteration cap when training");
  sweep->add_option("--tol", sweep_opts.tolerance,
                    "Gradient tolerance when training");
  sweep->add_option("--min-freq", sweep_opts.min_frequency,
                    "Vocabulary cutoff when training");
  sweep->add_option("--seed", sweep_opts.seed, "Recorded in reports");
  add_lexicon_option(sweep, sweep_opts.lexicon_path);

  PipelineOptions pipeline_opts;
  auto* pipeline = app.add_subcommand(
      "pipeline", "Run debias plans end to end and compare them");
  pipeline
      ->add_option("--config", pipeline_opts.config_path, "Experiment JSON")
      ->required();
  pipeline->add_option("--out-dir", pipeline_opts.out_dir,
                       "Directory for all artifacts");
  add_lexicon_option(pipeline, pipeline_opts.lexicon_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitHardError;
  }

  RunManifest manifest;
  manifest.command_line.push_back("fairgap");
  for (int i = 1; i < argc; ++i) manifest.command_line.push_back(argv[i]);
  const CLI::App* parsed = app.get_subcommands().front();
  manifest.command = parsed->get_name();

  try {
    if (parsed == synth) {
      synth_opts.seed_set = synth_seed->count() > 0;
      return cmd_synth(synth_opts, std::move(manifest));
    }
    if (parsed == perturb) return cmd_perturb(perturb_opts);
    if (parsed == debias) return cmd_debias(debias_opts, std::move(manifest));
    if (parsed == train) return cmd_train(train_opts, std::move(manifest));
    if (parsed == eval) return cmd_eval(eval_opts, std::move(manifest));
    if (parsed == adjust)
      return cmd_adjust_weights(adjust_opts, std::move(manifest));
    if (parsed == audit) return cmd_audit(audit_opts, std::move(manifest));
    if (parsed == sweep) return cmd_sweep(sweep_opts, std::move(manifest));
    if (parsed == pipeline)
      return cmd_pipeline(pipeline_opts, std::move(manifest));
  } catch (const std::exception& e) {
    std::cerr << "fairgap: error: " << e.what() << "\n";
    return kExitHardError;
  }
  std::cerr << "fairgap: error: no subcommand\n";
  return kExitHardError;
}
