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

#include "fairgap/model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fairgap/error.hpp"
#include "fairgap/perturb.hpp"

namespace fairgap {

namespace {

std::string lowercase(std::string s) {
  for (char& c : s)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

// One featurized document: sparse counts, label, training weight.
struct Example {
  std::vector<std::pair<int, int>> features;
  int label = 0;
  double weight = 1.0;
};

struct Objective {
  const std::vector<Example>& examples;
  int num_classes;
  int num_features;
  double l2;

  double loss(const std::vector<double>& W, const std::vector<double>& b,
              std::vector<double>& logits_buf) const {
    double total = 0.0;
    for (const Example& ex : examples) {
      compute_logits(W, b, ex, logits_buf);
      const double lse = log_sum_exp(logits_buf);
      total += ex.weight * (lse - logits_buf[ex.label]);
    }
    double reg = 0.0;
    for (double w : W) reg += w * w;
    return total + 0.5 * l2 * reg;
  }

  // Adds the data term's gradient into gW/gb (must be zeroed first),
  // then the l2 term. Returns the loss at (W, b) as a byproduct.
  double loss_and_gradient(const std::vector<double>& W,
                           const std::vector<double>& b,
                           std::vector<double>& gW, std::vector<double>& gb,
                           std::vector<double>& logits_buf) const {
    std::fill(gW.begin(), gW.end(), 0.0);
    std::fill(gb.begin(), gb.end(), 0.0);
    double total = 0.0;
    for (const Example& ex : examples) {
      compute_logits(W, b, ex, logits_buf);
      const double lse = log_sum_exp(logits_buf);
      total += ex.weight * (lse - logits_buf[ex.label]);
      for (int c = 0; c < num_classes; ++c) {
        double p = std::exp(logits_buf[c] - lse);
        double coeff = ex.weight * (p - (c == ex.label ? 1.0 : 0.0));
        gb[c] += coeff;
        const std::size_t row = static_cast<std::size_t>(c) * num_features;
        for (const auto& [f, count] : ex.features)
          gW[row + f] += coeff * count;
      }
    }
    double reg = 0.0;
    for (std::size_t i = 0; i < W.size(); ++i) {
      gW[i] += l2 * W[i];
      reg += W[i] * W[i];
    }
    return total + 0.5 * l2 * reg;
  }

  void compute_logits(const std::vector<double>& W,
                      const std::vector<double>& b, const Example& ex,
                      std::vector<double>& logits) const {
    for (int c = 0; c < num_classes; ++c) {
      double z = b[c];
      const std::size_t row = static_cast<std::size_t>(c) * num_features;
      for (const auto& [f, count] : ex.features) z += W[row + f] * count;
      logits[c] = z;
    }
  }

  static double log_sum_exp(const std::vector<double>& logits) {
    double m = logits[0];
    for (double v : logits) m = std::max(m, v);
    double sum = 0.0;
    for (double v : logits) sum += std::exp(v - m);
    return m + std::log(sum);
  }
};

}  // namespace

int Vocabulary::find(const std::string& lowercase_token) const {
  auto it = index.find(lowercase_token);
  return it == index.end() ? -1 : it->second;
}

Vocabulary build_vocab(const Dataset& ds, int min_frequency) {
  if (ds.docs.empty()) throw Error("build_vocab on empty dataset");
  if (min_frequency < 1) throw Error("min_frequency must be >= 1");

  std::unordered_map<std::string, int> freq;
  for (const Document& doc : ds.docs)
    for (const Token& tok : tokenize(doc.text)) ++freq[lowercase(tok.text)];

  Vocabulary vocab;
  vocab.min_frequency = min_frequency;
  for (const Document& doc : ds.docs) {
    for (const Token& tok : tokenize(doc.text)) {
      std::string low = lowercase(tok.text);
      if (freq[low] < min_frequency) continue;
      if (vocab.index.emplace(low, vocab.size()).second)
        vocab.tokens.push_back(std::move(low));
    }
  }
  if (vocab.tokens.empty())
    throw Error("vocabulary is empty after min_frequency cutoff");
  return vocab;
}

std::vector<std::pair<int, int>> featurize(const std::string& text,
                                           const Vocabulary& vocab) {
  std::unordered_map<int, int> counts;
  for (const Token& tok : tokenize(text)) {
    const int f = vocab.find(lowercase(tok.text));
    if (f >= 0) ++counts[f];
  }
  std::vector<std::pair<int, int>> features(counts.begin(), counts.end());
  std::sort(features.begin(), features.end());
  return features;
}

BowModel train(const Dataset& ds, const Vocabulary& vocab,
               const TrainConfig& config) {
  const int num_classes = ds.num_classes();
  const int num_features = vocab.size();
  if (ds.docs.empty()) throw Error("train on empty dataset");
  if (config.l2 < 0.0) throw Error("l2 must be non-negative");

  std::vector<std::int64_t> per_class(num_classes, 0);
  std::vector<Example> examples;
  examples.reserve(ds.docs.size());
  for (const Document& doc : ds.docs) {
    ++per_class[doc.label];
    examples.push_back(
        Example{featurize(doc.text, vocab), doc.label, doc.weight});
  }
  for (int c = 0; c < num_classes; ++c)
    if (per_class[c] == 0)
      throw Error("class \"" + ds.class_names[c] + "\" has no documents");

  const Objective objective{examples, num_classes, num_features, config.l2};

  std::vector<double> W(static_cast<std::size_t>(num_classes) * num_features, 0.0);
  std::vector<double> b(num_classes, 0.0);
  std::vector<double> gW(W.size()), gb(b.size());
  std::vector<double> W_try(W.size()), b_try(b.size());
  std::vector<double> logits(num_classes);

  double step = 1.0;
  int iter = 0;
  constexpr double kArmijo = 1e-4;

  for (; iter < config.max_iters; ++iter) {
    const double loss = objective.loss_and_gradient(W, b, gW, gb, logits);
    if (!std::isfinite(loss))
      throw Error("training diverged: non-finite loss at iteration " +
                  std::to_string(iter));

    double grad_max = 0.0, grad_sq = 0.0;
    for (double g : gW) {
      grad_max = std::max(grad_max, std::fabs(g));
      grad_sq += g * g;
    }
    for (double g : gb) {
      grad_max = std::max(grad_max, std::fabs(g));
      grad_sq += g * g;
    }
    if (grad_max < config.tolerance) break;

    // Backtracking line search along -gradient, warm-started from twice
    // the last accepted step so it can grow back after a cautious phase.
    double t = step * 2.0;
    bool accepted = false;
    for (int back = 0; back < 64; ++back) {
      for (std::size_t i = 0; i < W.size(); ++i) W_try[i] = W[i] - t * gW[i];
      for (std::size_t i = 0; i < b.size(); ++i) b_try[i] = b[i] - t * gb[i];
      const double trial = objective.loss(W_try, b_try, logits);
      if (std::isfinite(trial) && trial <= loss - kArmijo * t * grad_sq) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;  // no descent step representable; gradient is noise
    W.swap(W_try);
    b.swap(b_try);
    step = t;
  }

  // Recorded diagnostics must describe the weights actually returned, so
  // evaluate once more at the final point.
  const double final_loss = objective.loss_and_gradient(W, b, gW, gb, logits);
  double final_grad_max = 0.0;
  for (double g : gW) final_grad_max = std::max(final_grad_max, std::fabs(g));
  for (double g : gb) final_grad_max = std::max(final_grad_max, std::fabs(g));

  BowModel model;
  model.vocab = vocab;
  model.W = std::move(W);
  model.b = std::move(b);
  model.class_names = ds.class_names;
  model.meta.l2 = config.l2;
  model.meta.iterations = iter;
  model.meta.final_loss = final_loss;
  model.meta.grad_max_norm = final_grad_max;
  model.meta.seed = config.seed;
  std::ostringstream id;
  id << "bow-c" << num_classes << "-v" << num_features;
  model.model_id = id.str();
  return model;
}

namespace detail {

double training_objective(const Dataset& ds, const Vocabulary& vocab,
                          double l2, const std::vector<double>& W,
                          const std::vector<double>& b,
                          std::vector<double>* gradW,
                          std::vector<double>* gradb) {
  const int num_classes = ds.num_classes();
  const int num_features = vocab.size();
  if (W.size() != static_cast<std::size_t>(num_classes) * num_features ||
      b.size() != static_cast<std::size_t>(num_classes))
    throw Error("training_objective: W/b shape mismatch");

  std::vector<Example> examples;
  examples.reserve(ds.docs.size());
  for (const Document& doc : ds.docs)
    examples.push_back(
        Example{featurize(doc.text, vocab), doc.label, doc.weight});
  const Objective objective{examples, num_classes, num_features, l2};

  std::vector<double> logits(num_classes);
  if (gradW == nullptr || gradb == nullptr)
    return objective.loss(W, b, logits);
  gradW->assign(W.size(), 0.0);
  gradb->assign(b.size(), 0.0);
  return objective.loss_and_gradient(W, b, *gradW, *gradb, logits);
}

}  // namespace detail

Prediction BowModel::predict_text(const std::string& text) const {
  const int classes = num_classes();
  const int features = vocab.size();
  std::vector<double> logits(classes);
  const auto counts = featurize(text, vocab);
  for (int c = 0; c < classes; ++c) {
    double z = b[c];
    const std::size_t row = static_cast<std::size_t>(c) * features;
    for (const auto& [f, count] : counts) z += W[row + f] * count;
    logits[c] = z;
  }
  double m = logits[0];
  for (double v : logits) m = std::max(m, v);
  double sum = 0.0;
  for (double v : logits) sum += std::exp(v - m);

  Prediction pred;
  pred.scores.resize(classes);
  for (int c = 0; c < classes; ++c)
    pred.scores[c] = std::exp(logits[c] - m) / sum;
  pred.predicted_class = 0;
  for (int c = 1; c < classes; ++c)
    if (logits[c] > logits[pred.predicted_class]) pred.predicted_class = c;
  return pred;
}

Prediction predict(const BowModel& model, const Document& doc) {
  Prediction pred = model.predict_text(doc.text);
  pred.doc_id = doc.id;
  return pred;
}

std::vector<Prediction> predict_all(const BowModel& model, const Dataset& ds) {
  std::vector<Prediction> preds;
  preds.reserve(ds.docs.size());
  for (const Document& doc : ds.docs) preds.push_back(predict(model, doc));
  return preds;
}

BowModel adjust_gender_weights(const BowModel& model, double w,
                               WeightTarget which, const GenderLexicon& lex) {
  BowModel out = model;
  const bool female = which != WeightTarget::Male;
  const bool male = which != WeightTarget::Female;
  for (int f = 0; f < model.vocab.size(); ++f) {
    const std::string& token = model.vocab.tokens[f];
    const bool selected =
        (female && lex.is_indicator(token, Gender::Female)) ||
        (male && lex.is_indicator(token, Gender::Male));
    if (!selected) continue;
    for (int c = 0; c < model.num_classes(); ++c) out.w_at(c, f) *= w;
  }
  return out;
}

GenderWeightSummary gender_weight_summary(const BowModel& model,
                                          const Dataset& ds,
                                          const GenderLexicon& lex) {
  const int classes = model.num_classes();
  GenderWeightSummary summary;
  summary.female.assign(classes, 0.0);
  summary.male.assign(classes, 0.0);

  // freq[class][feature] over the dataset's documents of that class.
  std::vector<std::unordered_map<int, std::int64_t>> freq(classes);
  for (const Document& doc : ds.docs)
    for (const Token& tok : tokenize(doc.text)) {
      const int f = model.vocab.find(lowercase(tok.text));
      if (f >= 0) ++freq[doc.label][f];
    }

  for (int c = 0; c < classes; ++c) {
    for (const auto& [f, count] : freq[c]) {
      const std::string& token = model.vocab.tokens[f];
      const double contribution = model.w_at(c, f) * static_cast<double>(count);
      if (lex.is_indicator(token, Gender::Female))
        summary.female[c] += contribution;
      if (lex.is_indicator(token, Gender::Male))
        summary.male[c] += contribution;
    }
  }
  return summary;
}

std::string model_to_json(const BowModel& model) {
  nlohmann::ordered_json obj;
  obj["schema_version"] = 1;
  obj["model_id"] = model.model_id;
  obj["classes"] = model.class_names;
  obj["vocab"] = model.vocab.tokens;
  obj["min_frequency"] = model.vocab.min_frequency;
  obj["W"] = model.W;
  obj["b"] = model.b;
  obj["meta"] = {{"l2", model.meta.l2},
                 {"iterations", model.meta.iterations},
                 {"final_loss", model.meta.final_loss},
                 {"grad_max_norm", model.meta.grad_max_norm},
                 {"seed", model.meta.seed}};
  return obj.dump(2) + "\n";
}

BowModel model_from_json(const std::string& json_text) {
  nlohmann::json obj;
  try {
    obj = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad model JSON: ") + e.what());
  }
  if (obj.value("schema_version", 0) != 1)
    throw ParseError("unsupported model schema_version");

  BowModel model;
  model.model_id = obj.value("model_id", std::string());
  model.class_names = obj["classes"].get<std::vector<std::string>>();
  model.vocab.tokens = obj["vocab"].get<std::vector<std::string>>();
  model.vocab.min_frequency = obj.value("min_frequency", 1);
  for (int f = 0; f < static_cast<int>(model.vocab.tokens.size()); ++f)
    model.vocab.index[model.vocab.tokens[f]] = f;
  model.W = obj["W"].get<std::vector<double>>();
  model.b = obj["b"].get<std::vector<double>>();
  if (model.W.size() != model.class_names.size() * model.vocab.tokens.size() ||
      model.b.size() != model.class_names.size())
    throw ParseError("model matrix dimensions do not match vocab/classes");
  for (double v : model.W)
    if (!std::isfinite(v)) throw ParseError("model has non-finite weights");
  for (double v : model.b)
    if (!std::isfinite(v)) throw ParseError("model has non-finite bias");
  if (obj.contains("meta")) {
    const auto& meta = obj["meta"];
    model.meta.l2 = meta.value("l2", 0.0);
    model.meta.iterations = meta.value("iterations", 0);
    model.meta.final_loss = meta.value("final_loss", 0.0);
    model.meta.grad_max_norm = meta.value("grad_max_norm", 0.0);
    model.meta.seed = meta.value("seed", std::uint64_t{0});
  }
  return model;
}

void save_model(const BowModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << model_to_json(model);
  if (!out) throw Error("write failed: " + path);
}

BowModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return model_from_json(buffer.str());
}

}  // namespace fairgap
