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

#ifndef FAIRGAP_TOOLS_COMMANDS_HPP_
#define FAIRGAP_TOOLS_COMMANDS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "manifest.hpp"

namespace fairgap::tools {

// Exit-code contract shared by every subcommand: 0 for success, 2 when a
// report was produced but some metric was undefined on this input, 1 for
// hard failures (bad arguments, unreadable files, training errors).
inline constexpr int kExitOk = 0;
inline constexpr int kExitHardError = 1;
inline constexpr int kExitDegenerate = 2;

struct SynthOptions {
  std::string config_path;
  std::string out_path;
  std::uint64_t seed = 0;
  bool seed_set = false;  // --seed overrides the config's seed
};

struct PerturbOptions {
  std::string target;  // "female", "male", or "flip"
  std::string lexicon_path;
};

struct DebiasOptions {
  std::string in_path;
  std::string out_path;
  std::string method;
  std::string order = "resample-first";
  std::string cf_weight = "unit";
  std::uint64_t seed = 0;
  std::string lexicon_path;
};

struct TrainOptions {
  std::string data_path;
  std::string out_path;
  double l2 = 1e-3;
  int max_iters = 5000;
  double tolerance = 1e-8;
  int min_frequency = 1;
  std::uint64_t seed = 0;
  std::string format = "json";  // stdout summary style
};

struct EvalOptions {
  std::string model_path;
  std::string data_path;
  std::string out_path;  // optional predictions JSONL
  std::string format = "json";
};

struct AdjustWeightsOptions {
  std::string model_path;
  std::string out_path;
  double w = 1.0;
  std::string which = "both";
  std::string lexicon_path;
};

struct AuditOptions {
  std::string model_path;
  std::string data_path;
  std::string positive_class;  // class name or index; empty = unset
  std::vector<double> bucket_edges;
  bool default_buckets = false;
  std::string out_dir = ".";
  std::string format;  // "json", "csv", or empty for both
  std::string lexicon_path;
  std::uint64_t seed = 0;
};

struct SweepOptions {
  std::string model_path;       // exactly one of model_path /
  std::string train_data_path;  // train_data_path must be given
  std::string data_path;
  std::vector<double> w_grid;
  std::string which = "both";
  std::string positive_class;
  std::string out_path = "sweep.csv";
  std::string lexicon_path;
  double l2 = 1e-3;
  int max_iters = 5000;
  double tolerance = 1e-8;
  int min_frequency = 1;
  std::uint64_t seed = 0;
};

struct PipelineOptions {
  std::string config_path;
  std::string out_dir = ".";
  std::string lexicon_path;
};

int cmd_synth(const SynthOptions& options, RunManifest manifest);
int cmd_perturb(const PerturbOptions& options);
int cmd_debias(const DebiasOptions& options, RunManifest manifest);
int cmd_train(const TrainOptions& options, RunManifest manifest);
int cmd_eval(const EvalOptions& options, RunManifest manifest);
int cmd_adjust_weights(const AdjustWeightsOptions& options, RunManifest manifest);
int cmd_audit(const AuditOptions& options, RunManifest manifest);
int cmd_sweep(const SweepOptions& options, RunManifest manifest);
int cmd_pipeline(const PipelineOptions& options, RunManifest manifest);

}  // namespace fairgap::tools

#endif  // FAIRGAP_TOOLS_COMMANDS_HPP_
