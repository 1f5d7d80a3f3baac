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
#include <string>
#include <vector>

#include "fairgap/corpus.hpp"
#include "fairgap/error.hpp"
#include "fairgap/metrics.hpp"
#include "fairgap/model.hpp"
#include "commands.hpp"
#include "common.hpp"
#include "util.hpp"

namespace fairgap::tools {

namespace {

std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\n") == std::string::npos) return value;
  std::string quoted = "\"";
  for (char c : value) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

// One sweep row per defined gap cell, mirroring the report CSV's cell
// order so a single-w sweep lines up with an audit of the same model.
void append_gap_rows(std::string& out, const std::string& w,
                     const BiasReport& report) {
  auto emit = [&](const char* metric, const GapCell& cell,
                  const std::string& cls) {
    if (!cell.score) return;
    out += w;
    out += ',';
    out += metric;
    out += ',';
    out += csv_field(cls);
    out += ',';
    out += format_double(cell.score->value);
    out += ',';
    out += std::to_string(cell.score->support_female);
    out += ',';
    out += std::to_string(cell.score->support_male);
    out += '\n';
  };
  emit("sg_ppr", report.sg_ppr, "");
  emit("cg_ppr", report.cg_ppr, "");
  const std::pair<const char*, const std::vector<GapCell>*> arrays[] = {
      {"sg_tpr", &report.sg_tpr},
      {"cg_tpr", &report.cg_tpr},
      {"sg_fpr", &report.sg_fpr},
      {"cg_fpr", &report.cg_fpr},
  };
  for (const auto& [metric, cells] : arrays)
    for (std::size_t c = 0; c < cells->size(); ++c)
      emit(metric, (*cells)[c], report.class_names[c]);
}

}  // namespace

int cmd_audit(const AuditOptions& options, RunManifest manifest) {
  const auto started = std::chrono::steady_clock::now();
  std::optional<GenderLexicon> storage;
  const GenderLexicon& lex = resolve_lexicon(options.lexicon_path, storage);

  const BowModel model = load_model(options.model_path);
  const Dataset ds = load_jsonl(options.data_path);
  check_class_match(model, ds);

  BiasReportOptions report_options;
  report_options.positive_class =
      parse_positive_class(options.positive_class, ds.class_names);
  report_options.bucket_edges = options.default_buckets
                                    ? default_bucket_edges()
                                    : options.bucket_edges;
  report_options.model_id =
      model.model_id.empty() ? options.model_path : model.model_id;
  report_options.dataset_id = options.data_path;
  report_options.seed = options.seed;

  const BiasReport report = bias_report(model, ds, lex, report_options);

  const std::string id = manifest.id();
  manifest.seeds["seed"] = options.seed;
  manifest.inputs = {options.model_path, options.data_path};

  const std::filesystem::path out_dir(options.out_dir);
  const bool write_json = options.format.empty() || options.format == "json";
  const bool write_csv = options.format.empty() || options.format == "csv";
  if (write_json) {
    const std::string path = (out_dir / "report.json").string();
    atomic_write(path, report_to_json(report, id));
    manifest.outputs.push_back(path);
  }
  if (write_csv) {
    const std::string path = (out_dir / "report.csv").string();
    atomic_write(path, report_to_csv(report, id));
    manifest.outputs.push_back(path);
  }
  finish_manifest(manifest, started, (out_dir / "manifest.json").string());
  return report.has_missing() ? kExitDegenerate : kExitOk;
}

int cmd_sweep(const SweepOptions& options, RunManifest manifest) {
  const auto started = std::chrono::steady_clock::now();
  std::optional<GenderLexicon> storage;
  const GenderLexicon& lex = resolve_lexicon(options.lexicon_path, storage);

  if (options.model_path.empty() == options.train_data_path.empty())
    throw Error("pass exactly one of --model / --train-data");
  if (options.w_grid.empty()) throw Error("--w grid is empty");

  const Dataset ds = load_jsonl(options.data_path);
  BowModel model;
  if (!options.model_path.empty()) {
    model = load_model(options.model_path);
    manifest.inputs = {options.model_path, options.data_path};
  } else {
    const Dataset train_set = load_jsonl(options.train_data_path);
    const Vocabulary vocab = build_vocab(train_set, options.min_frequency);
    TrainConfig config;
    config.l2 = options.l2;
    config.max_iters = options.max_iters;
    config.tolerance = options.tolerance;
    config.seed = options.seed;
    model = train(train_set, vocab, config);
    manifest.inputs = {options.train_data_path, options.data_path};
  }
  check_class_match(model, ds);

  BiasReportOptions report_options;
  report_options.positive_class =
      parse_positive_class(options.positive_class, ds.class_names);
  report_options.dataset_id = options.data_path;
  report_options.seed = options.seed;

  const WeightTarget which = options.which == "female" ? WeightTarget::Female
                             : options.which == "male" ? WeightTarget::Male
                                                       : WeightTarget::Both;

  bool any_missing = false;
  std::string csv = "w,metric,class,value,support_f,support_m\n";
  for (double w : options.w_grid) {
    const BowModel adjusted = adjust_gender_weights(model, w, which, lex);
    report_options.model_id = adjusted.model_id;
    const BiasReport report = bias_report(adjusted, ds, lex, report_options);
    any_missing |= report.has_missing();
    append_gap_rows(csv, format_double(w), report);
  }
  const std::string id = manifest.id();
  csv += ",manifest_id,," + id + ",,\n";

  manifest.seeds["seed"] = options.seed;
  manifest.outputs = {options.out_path};
  atomic_write(options.out_path, csv);
  finish_manifest(manifest, started, options.out_path + ".manifest.json");
  return any_missing ? kExitDegenerate : kExitOk;
}

}  // namespace fairgap::tools
