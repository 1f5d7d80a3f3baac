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

#ifndef FAIRGAP_METRICS_HPP_
#define FAIRGAP_METRICS_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fairgap/document.hpp"
#include "fairgap/lexicon.hpp"

namespace fairgap {

struct Prediction {
  std::string doc_id;
  int predicted_class = 0;
  // Per-class probabilities summing to 1; empty when the classifier
  // exposes hard labels only. When present, predicted_class is their
  // argmax (lowest index on ties).
  std::vector<double> scores;
};

// What the causal metrics need from a model: a pure text -> prediction
// function. Implementations that tolerate concurrent predict_text calls
// say so via concurrent_predict_safe; the causal-gap evaluator only
// parallelizes over documents when that is true.
class Classifier {
 public:
  virtual ~Classifier() = default;
  virtual int num_classes() const = 0;
  virtual Prediction predict_text(const std::string& text) const = 0;
  virtual bool concurrent_predict_safe() const { return false; }
  virtual std::string id() const { return std::string(); }
};

// The six gap families. SG_* compare observed rates between gender
// groups; CG_* compare each document against its own gender-swapped
// twin (do-operator), averaged over the population.
enum class GapKind { SgPpr, CgPpr, SgTpr, CgTpr, SgFpr, CgFpr };

inline constexpr int kNumGapKinds = 6;

// Serialized name: "sg_ppr", "cg_ppr", "sg_tpr", "cg_tpr", "sg_fpr", "cg_fpr".
const char* to_string(GapKind kind);
bool is_causal(GapKind kind);

// One signed gap value. Positive means female-favored for the metric's
// event (higher positive rate / TPR / FPR on the female side).
struct GapScore {
  double value = 0.0;
  GapKind kind = GapKind::SgPpr;
  std::optional<int> class_index;  // absent for the PPR kinds
  // Population sizes behind each side of the difference. For causal
  // kinds both sides evaluate the whole population, so the two are equal.
  std::int64_t support_female = 0;
  std::int64_t support_male = 0;
};

// A gap slot in a report: either a score or the reason it is undefined.
struct GapCell {
  std::optional<GapScore> score;
  std::string missing_reason;

  bool missing() const { return !score.has_value(); }
};

// Gap recomputation within one gender_confidence bucket.
struct BucketReport {
  double low = 0.0;
  double high = 1.0;
  bool last = false;  // last bucket includes its upper edge
  std::int64_t count_female = 0;
  std::int64_t count_male = 0;
  GapCell sg_ppr;
  GapCell cg_ppr;
};

// Stock gender_confidence bucket edges: {0.5, 0.85, 0.95, 1.0}.
std::vector<double> default_bucket_edges();

struct BiasReportOptions {
  // Class treated as "positive" for the PPR gaps and AUC. Required for
  // PPR cells and for bucketing; without it those stay undefined.
  std::optional<int> positive_class;
  // Bucket edges over gender_confidence, e.g. {0.5, 0.85, 0.95, 1.0}
  // yields [0.5,0.85), [0.85,0.95), [0.95,1.0]. Fewer than two edges
  // disables bucketing.
  std::vector<double> bucket_edges;
  std::string model_id;
  std::string dataset_id;
  std::uint64_t seed = 0;
};

struct BiasReport {
  static constexpr int kSchemaVersion = 1;

  std::string model_id;
  std::string dataset_id;
  std::uint64_t seed = 0;
  std::vector<std::string> class_names;
  std::optional<int> positive_class;

  GapCell sg_ppr;
  GapCell cg_ppr;
  // One cell per class, indexed by class.
  std::vector<GapCell> sg_tpr;
  std::vector<GapCell> cg_tpr;
  std::vector<GapCell> sg_fpr;
  std::vector<GapCell> cg_fpr;

  // RMS over the defined values of each kind, indexed by GapKind.
  // Unset when the kind has no defined value at all.
  std::array<std::optional<double>, kNumGapKinds> rms_by_kind;

  double accuracy = 0.0;
  std::optional<double> auc;

  std::vector<BucketReport> buckets;

  const GapCell& ppr_cell(GapKind kind) const;
  const std::vector<GapCell>& class_cells(GapKind kind) const;

  // True when any top-level gap cell is undefined (drives exit code 2).
  bool has_missing() const;
};

// --- Statistical gaps -------------------------------------------------
// Predictions are matched to documents by doc_id; every gendered
// document needs one. Unknown-gender documents never enter a gap
// population. All three throw MetricUndefined when a side is empty.

// P(pred = positive | Female) - P(pred = positive | Male).
GapScore statistical_ppr_gap(const std::vector<Prediction>& preds,
                             const Dataset& ds, int positive_class);

// TPR difference on documents labeled y.
GapScore statistical_tpr_gap(const std::vector<Prediction>& preds,
                             const Dataset& ds, int y);

// FPR difference on documents labeled != y.
GapScore statistical_fpr_gap(const std::vector<Prediction>& preds,
                             const Dataset& ds, int y);

// --- Causal gaps ------------------------------------------------------
// For every document in the population, both do-versions of the text are
// classified and the event indicators are differenced:
//   mean over docs of [1{model(do-Female text) in event}
//                      - 1{model(do-Male text) in event}]
// kind selects the population and event: CgPpr (all documents, event
// pred = class_index), CgTpr (label = class_index, event pred = label),
// CgFpr (label != class_index, event pred = class_index). No absolute
// value is taken. Every document in the population must be Female/Male;
// an Unknown document is an error (callers filter first, as bias_report
// does). Throws MetricUndefined on an empty population.
GapScore causal_gap(const Classifier& model, const Dataset& ds,
                    const GenderLexicon& lex, GapKind kind, int class_index);

namespace detail {
// Worker-count-explicit variant used to check that parallel evaluation
// is bitwise identical to sequential. num_threads = 0 picks the default.
GapScore causal_gap_with_threads(const Classifier& model, const Dataset& ds,
                                 const GenderLexicon& lex, GapKind kind,
                                 int class_index, unsigned num_threads);
}  // namespace detail

// sqrt(mean of squares). Throws Error on an empty span.
double rms(std::span<const double> values);

// Fraction of correct predictions over ALL documents, Unknown included.
double accuracy(const std::vector<Prediction>& preds, const Dataset& ds);

// Probability that a random positive-class document outscores a random
// negative one, ties at 0.5 (rank-sum form). Requires a binary task,
// probability scores, and at least one document on each side.
double auc(const std::vector<Prediction>& preds, const Dataset& ds,
           int positive_class);

// Runs the full audit: all six gap kinds (PPR only with positive_class),
// per-kind RMS over defined values, accuracy, AUC on binary tasks with
// scores, and optional confidence-bucketed PPR gaps. Individual
// undefined metrics become missing cells with reasons; only an empty
// dataset aborts.
BiasReport bias_report(const Classifier& model, const Dataset& ds,
                       const GenderLexicon& lex,
                       const BiasReportOptions& options = {});

// --- Serialization ----------------------------------------------------
// JSON schema (schema_version 1) uses exactly the field names sg_ppr,
// cg_ppr, sg_tpr, cg_tpr, sg_fpr, cg_fpr, rms, accuracy, auc, buckets.
// CSV is long-form with header metric,class,value,support_f,support_m;
// summary rows are rms_<kind>, accuracy, auc, and manifest_id when one
// is supplied. Both serializers are byte-deterministic.
std::string report_to_json(const BiasReport& report,
                           const std::string& manifest_id = std::string());
std::string report_to_csv(const BiasReport& report,
                          const std::string& manifest_id = std::string());
BiasReport report_from_json(const std::string& json_text);

}  // namespace fairgap

#endif  // FAIRGAP_METRICS_HPP_
