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

#ifndef FAIRGAP_MODEL_HPP_
#define FAIRGAP_MODEL_HPP_

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fairgap/document.hpp"
#include "fairgap/lexicon.hpp"
#include "fairgap/metrics.hpp"

namespace fairgap {

struct Vocabulary {
  std::vector<std::string> tokens;               // index -> token
  std::unordered_map<std::string, int> index;    // token -> index
  int min_frequency = 1;

  int size() const { return static_cast<int>(tokens.size()); }
  // -1 when the token is out of vocabulary.
  int find(const std::string& lowercase_token) const;
};

// Lowercased tokens with corpus frequency >= min_frequency, indexed in
// first-occurrence order. Throws Error when nothing survives the cutoff.
Vocabulary build_vocab(const Dataset& ds, int min_frequency = 1);

// Sparse token counts: (feature index, count), sorted by feature index.
// Matching is case-insensitive; out-of-vocabulary tokens are dropped.
std::vector<std::pair<int, int>> featurize(const std::string& text,
                                           const Vocabulary& vocab);

struct TrainConfig {
  double l2 = 1e-3;
  int max_iters = 5000;
  double tolerance = 1e-8;  // on the gradient max-norm
  std::uint64_t seed = 0;   // recorded in meta; training is deterministic
};

struct TrainingMeta {
  double l2 = 0.0;
  int iterations = 0;
  double final_loss = 0.0;
  double grad_max_norm = 0.0;
  std::uint64_t seed = 0;
};

// Multinomial logistic regression over bag-of-words counts. W is
// row-major [num_classes x vocab.size()], logits = W x + b, prediction
// is the softmax argmax with ties broken toward the lowest class index.
struct BowModel : Classifier {
  Vocabulary vocab;
  std::vector<double> W;
  std::vector<double> b;
  std::vector<std::string> class_names;
  TrainingMeta meta;
  std::string model_id;

  double& w_at(int cls, int feature) {
    return W[static_cast<std::size_t>(cls) * vocab.tokens.size() + feature];
  }
  double w_at(int cls, int feature) const {
    return W[static_cast<std::size_t>(cls) * vocab.tokens.size() + feature];
  }

  int num_classes() const override {
    return static_cast<int>(class_names.size());
  }
  Prediction predict_text(const std::string& text) const override;
  bool concurrent_predict_safe() const override { return true; }
  std::string id() const override { return model_id; }
};

// Minimizes
//   sum_i weight_i * (-log softmax(W x_i + b)[y_i]) + (l2/2) * ||W||^2
// (bias b unregularized) by full-batch gradient descent with Armijo
// backtracking line search from zero initialization. Stops when the
// gradient max-norm drops below config.tolerance or after max_iters.
// Deterministic for a given dataset and config. Throws Error on an empty
// class or a non-finite loss.
BowModel train(const Dataset& ds, const Vocabulary& vocab,
               const TrainConfig& config = {});

Prediction predict(const BowModel& model, const Document& doc);
std::vector<Prediction> predict_all(const BowModel& model, const Dataset& ds);

namespace detail {
// Loss and analytic gradient of the training objective at an arbitrary
// point (W row-major [num_classes x vocab.size()], b per class), exposed
// so the gradient can be checked against finite differences. gradW and
// gradb may be null to evaluate the loss alone.
double training_objective(const Dataset& ds, const Vocabulary& vocab,
                          double l2, const std::vector<double>& W,
                          const std::vector<double>& b,
                          std::vector<double>* gradW,
                          std::vector<double>* gradb);
}  // namespace detail

// Which indicator set a weight adjustment touches.
enum class WeightTarget { Female, Male, Both };

// Scales every W column whose vocabulary token is a gender indicator of
// the selected set by w. Bias and all other columns are untouched.
// w = 1 is the identity; w = 0 makes the model lexicon-blind.
BowModel adjust_gender_weights(const BowModel& model, double w,
                               WeightTarget which, const GenderLexicon& lex);

// summary[class][gender side]: sum over the gender's vocabulary tokens t
// of W[class, t] * (total occurrences of t in ds documents labeled class).
struct GenderWeightSummary {
  std::vector<double> female;  // per class
  std::vector<double> male;
};

GenderWeightSummary gender_weight_summary(const BowModel& model,
                                          const Dataset& ds,
                                          const GenderLexicon& lex);

// Versioned JSON serialization:
// {schema_version, vocab:[tokens], W:[row-major], b:[...], classes:[...], meta:{...}}.
std::string model_to_json(const BowModel& model);
BowModel model_from_json(const std::string& json_text);
void save_model(const BowModel& model, const std::string& path);
BowModel load_model(const std::string& path);

}  // namespace fairgap

#endif  // FAIRGAP_MODEL_HPP_
