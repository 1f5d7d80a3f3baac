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

#include <benchmark/benchmark.h>

#include <string>

#include "fairgap/debias.hpp"
#include "fairgap/lexicon.hpp"
#include "fairgap/metrics.hpp"
#include "fairgap/model.hpp"
#include "fairgap/perturb.hpp"
#include "fairgap/synth.hpp"

namespace {

using namespace fairgap;

const GenderLexicon& lex() { return GenderLexicon::builtin(); }

SynthConfig bench_config(int docs_per_class) {
  SynthConfig config;
  config.num_classes = 2;
  config.docs_per_class = docs_per_class;
  config.gender_skew = {0.2, 0.8};
  config.explicit_rate = 1.0;
  config.proxy_strength = 0.9;
  config.doc_length = 4;
  config.seed = 1;
  return config;
}

const Dataset& bench_corpus() {
  static const Dataset ds = generate(bench_config(500));
  return ds;
}

const BowModel& bench_model() {
  static const BowModel model = [] {
    TrainConfig config;
    config.max_iters = 200;
    return train(bench_corpus(), build_vocab(bench_corpus()), config);
  }();
  return model;
}

void BM_Tokenize(benchmark::State& state) {
  const std::string text =
      "She told her brother that Mr Day had already sent him the signed "
      "form, and he filed it himself before Mrs Reed could ask for hers.";
  for (auto _ : state)
    benchmark::DoNotOptimize(tokenize(text));
}
BENCHMARK(BM_Tokenize);

void BM_Perturb(benchmark::State& state) {
  const std::string text =
      "She told her brother that Mr Day had already sent him the signed "
      "form, and he filed it himself before Mrs Reed could ask for hers.";
  for (auto _ : state)
    benchmark::DoNotOptimize(perturb(text, Gender::Female, lex()));
}
BENCHMARK(BM_Perturb);

void BM_DetectGender(benchmark::State& state) {
  const std::string text =
      "She told her brother that Mr Day had already sent him the signed "
      "form, and he filed it himself before Mrs Reed could ask for hers.";
  for (auto _ : state)
    benchmark::DoNotOptimize(detect_gender(text, lex()));
}
BENCHMARK(BM_DetectGender);

void BM_Synth(benchmark::State& state) {
  const SynthConfig config = bench_config(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(generate(config));
  state.SetItemsProcessed(state.iterations() * state.range(0) * 2);
}
BENCHMARK(BM_Synth)->Arg(100)->Arg(1000);

void BM_Train(benchmark::State& state) {
  SynthConfig corpus_config = bench_config(static_cast<int>(state.range(0)));
  const Dataset ds = generate(corpus_config);
  const Vocabulary vocab = build_vocab(ds);
  TrainConfig config;
  config.max_iters = 50;
  for (auto _ : state)
    benchmark::DoNotOptimize(train(ds, vocab, config));
}
BENCHMARK(BM_Train)->Arg(100)->Arg(500);

void BM_PredictAll(benchmark::State& state) {
  const Dataset& ds = bench_corpus();
  const BowModel& model = bench_model();
  for (auto _ : state)
    benchmark::DoNotOptimize(predict_all(model, ds));
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(ds.size()));
}
BENCHMARK(BM_PredictAll);

void BM_CausalGap(benchmark::State& state) {
  const Dataset& ds = bench_corpus();
  const BowModel& model = bench_model();
  for (auto _ : state)
    benchmark::DoNotOptimize(
        causal_gap(model, ds, lex(), GapKind::CgTpr, 1));
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(ds.size()));
}
BENCHMARK(BM_CausalGap);

void BM_AugmentCda(benchmark::State& state) {
  const Dataset& ds = bench_corpus();
  for (auto _ : state)
    benchmark::DoNotOptimize(augment_cda(ds, lex()));
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(ds.size()));
}
BENCHMARK(BM_AugmentCda);

void BM_BiasReport(benchmark::State& state) {
  const Dataset& ds = bench_corpus();
  const BowModel& model = bench_model();
  BiasReportOptions options;
  options.positive_class = 1;
  for (auto _ : state)
    benchmark::DoNotOptimize(bias_report(model, ds, lex(), options));
}
BENCHMARK(BM_BiasReport);

}  // namespace

BENCHMARK_MAIN();
