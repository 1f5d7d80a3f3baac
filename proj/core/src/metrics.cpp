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

#include "fairgap/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <thread>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "fairgap/error.hpp"
#include "fairgap/perturb.hpp"

namespace fairgap {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kKindNames[kNumGapKinds] = {
    "sg_ppr", "cg_ppr", "sg_tpr", "cg_tpr", "sg_fpr", "cg_fpr"};

int kind_index(GapKind kind) { return static_cast<int>(kind); }

// Predicted class per document index, -1 where no prediction was given.
std::vector<int> align_predictions(const std::vector<Prediction>& preds,
                                   const Dataset& ds) {
  std::unordered_map<std::string, int> by_id;
  by_id.reserve(preds.size());
  for (std::size_t i = 0; i < preds.size(); ++i) {
    if (!by_id.emplace(preds[i].doc_id, static_cast<int>(i)).second)
      throw Error("duplicate prediction for document " + preds[i].doc_id);
  }
  std::vector<int> cls(ds.docs.size(), -1);
  for (std::size_t i = 0; i < ds.docs.size(); ++i) {
    auto it = by_id.find(ds.docs[i].id);
    if (it != by_id.end()) cls[i] = preds[it->second].predicted_class;
  }
  return cls;
}

int predicted_or_throw(const std::vector<int>& cls, const Dataset& ds,
                       std::size_t i) {
  if (cls[i] < 0)
    throw Error("missing prediction for document " + ds.docs[i].id);
  return cls[i];
}

// Mean of an event indicator over one gender's slice of a population.
struct GroupRate {
  std::int64_t hits = 0;
  std::int64_t count = 0;
  double rate() const { return static_cast<double>(hits) / count; }
};

const char* class_name_or(const Dataset& ds, int y) {
  return ds.class_names[y].c_str();
}

GapScore make_score(GapKind kind, std::optional<int> cls, GroupRate female,
                    GroupRate male) {
  GapScore score;
  score.kind = kind;
  score.class_index = cls;
  score.value = female.rate() - male.rate();
  score.support_female = female.count;
  score.support_male = male.count;
  return score;
}

}  // namespace

const char* to_string(GapKind kind) { return kKindNames[kind_index(kind)]; }

bool is_causal(GapKind kind) {
  return kind == GapKind::CgPpr || kind == GapKind::CgTpr ||
         kind == GapKind::CgFpr;
}

GapScore statistical_ppr_gap(const std::vector<Prediction>& preds,
                             const Dataset& ds, int positive_class) {
  const std::vector<int> cls = align_predictions(preds, ds);
  GroupRate female, male;
  for (std::size_t i = 0; i < ds.docs.size(); ++i) {
    const Document& doc = ds.docs[i];
    if (doc.gender == Gender::Unknown) continue;
    GroupRate& group = doc.gender == Gender::Female ? female : male;
    ++group.count;
    if (predicted_or_throw(cls, ds, i) == positive_class) ++group.hits;
  }
  if (female.count == 0) throw MetricUndefined("empty group: female");
  if (male.count == 0) throw MetricUndefined("empty group: male");
  return make_score(GapKind::SgPpr, std::nullopt, female, male);
}

GapScore statistical_tpr_gap(const std::vector<Prediction>& preds,
                             const Dataset& ds, int y) {
  const std::vector<int> cls = align_predictions(preds, ds);
  GroupRate female, male;
  for (std::size_t i = 0; i < ds.docs.size(); ++i) {
    const Document& doc = ds.docs[i];
    if (doc.gender == Gender::Unknown || doc.label != y) continue;
    GroupRate& group = doc.gender == Gender::Female ? female : male;
    ++group.count;
    if (predicted_or_throw(cls, ds, i) == y) ++group.hits;
  }
  if (female.count == 0)
    throw MetricUndefined(std::string("empty group: female for class \"") +
                          class_name_or(ds, y) + "\"");
  if (male.count == 0)
    throw MetricUndefined(std::string("empty group: male for class \"") +
                          class_name_or(ds, y) + "\"");
  return make_score(GapKind::SgTpr, y, female, male);
}

GapScore statistical_fpr_gap(const std::vector<Prediction>& preds,
                             const Dataset& ds, int y) {
  const std::vector<int> cls = align_predictions(preds, ds);
  GroupRate female, male;
  for (std::size_t i = 0; i < ds.docs.size(); ++i) {
    const Document& doc = ds.docs[i];
    if (doc.gender == Gender::Unknown || doc.label == y) continue;
    GroupRate& group = doc.gender == Gender::Female ? female : male;
    ++group.count;
    if (predicted_or_throw(cls, ds, i) == y) ++group.hits;
  }
  if (female.count == 0)
    throw MetricUndefined(
        std::string("empty group: female for classes other than \"") +
        class_name_or(ds, y) + "\"");
  if (male.count == 0)
    throw MetricUndefined(
        std::string("empty group: male for classes other than \"") +
        class_name_or(ds, y) + "\"");
  return make_score(GapKind::SgFpr, y, female, male);
}

namespace {

// Shared by causal_gap and bias_report: the per-document do-pair
// contribution 1{female version in event} - 1{male version in event}.
// Contributions are collected into a pre-sized array and summed in
// document order, so the result is bitwise independent of how many
// workers filled the array.
struct DoPairOutcome {
  int female_pred = -1;
  int male_pred = -1;
};

std::vector<DoPairOutcome> evaluate_do_pairs(
    const Classifier& model, const Dataset& ds, const GenderLexicon& lex,
    const std::vector<std::size_t>& population, unsigned num_threads) {
  std::vector<DoPairOutcome> outcomes(population.size());
  auto work = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t k = lo; k < hi; ++k) {
      const std::string& text = ds.docs[population[k]].text;
      outcomes[k].female_pred =
          model.predict_text(perturb(text, Gender::Female, lex).text)
              .predicted_class;
      outcomes[k].male_pred =
          model.predict_text(perturb(text, Gender::Male, lex).text)
              .predicted_class;
    }
  };

  if (num_threads == 0) {
    num_threads = model.concurrent_predict_safe()
                      ? std::max(1u, std::thread::hardware_concurrency())
                      : 1u;
  }
  if (!model.concurrent_predict_safe()) num_threads = 1;
  const std::size_t n = population.size();
  if (num_threads <= 1 || n < 2 * num_threads) {
    work(0, n);
    return outcomes;
  }
  std::vector<std::thread> workers;
  const std::size_t chunk = (n + num_threads - 1) / num_threads;
  for (unsigned t = 0; t < num_threads; ++t) {
    const std::size_t lo = t * chunk;
    if (lo >= n) break;
    workers.emplace_back(work, lo, std::min(n, lo + chunk));
  }
  for (std::thread& w : workers) w.join();
  return outcomes;
}

GapScore causal_from_outcomes(const std::vector<DoPairOutcome>& outcomes,
                              GapKind kind, std::optional<int> cls,
                              int event_class) {
  std::int64_t sum = 0;
  for (const DoPairOutcome& o : outcomes) {
    sum += (o.female_pred == event_class ? 1 : 0) -
           (o.male_pred == event_class ? 1 : 0);
  }
  GapScore score;
  score.kind = kind;
  score.class_index = cls;
  score.value = static_cast<double>(sum) / static_cast<double>(outcomes.size());
  score.support_female = static_cast<std::int64_t>(outcomes.size());
  score.support_male = static_cast<std::int64_t>(outcomes.size());
  return score;
}

std::vector<std::size_t> causal_population(const Dataset& ds, GapKind kind,
                                           int class_index,
                                           bool skip_unknown) {
  std::vector<std::size_t> population;
  for (std::size_t i = 0; i < ds.docs.size(); ++i) {
    const Document& doc = ds.docs[i];
    if (kind == GapKind::CgTpr && doc.label != class_index) continue;
    if (kind == GapKind::CgFpr && doc.label == class_index) continue;
    if (doc.gender == Gender::Unknown) {
      if (skip_unknown) continue;
      throw Error("causal gap population contains unknown-gender document " +
                  doc.id);
    }
    population.push_back(i);
  }
  return population;
}

std::string empty_population_reason(const Dataset& ds, GapKind kind,
                                    int class_index) {
  std::string what = std::string("empty population for ") + to_string(kind);
  if (kind != GapKind::CgPpr)
    what += std::string(" class \"") + ds.class_names[class_index] + "\"";
  return what;
}

}  // namespace

namespace detail {

GapScore causal_gap_with_threads(const Classifier& model, const Dataset& ds,
                                 const GenderLexicon& lex, GapKind kind,
                                 int class_index, unsigned num_threads) {
  if (!is_causal(kind)) throw Error("causal_gap needs a causal GapKind");
  if (class_index < 0 || class_index >= ds.num_classes())
    throw Error("causal_gap class index out of range");
  const std::vector<std::size_t> population =
      causal_population(ds, kind, class_index, /*skip_unknown=*/false);
  if (population.empty())
    throw MetricUndefined(empty_population_reason(ds, kind, class_index));
  const std::vector<DoPairOutcome> outcomes =
      evaluate_do_pairs(model, ds, lex, population, num_threads);
  const std::optional<int> cls =
      kind == GapKind::CgPpr ? std::nullopt : std::optional<int>(class_index);
  return causal_from_outcomes(outcomes, kind, cls, class_index);
}

}  // namespace detail

GapScore causal_gap(const Classifier& model, const Dataset& ds,
                    const GenderLexicon& lex, GapKind kind, int class_index) {
  return detail::causal_gap_with_threads(model, ds, lex, kind, class_index,
                                         /*num_threads=*/0);
}

std::vector<double> default_bucket_edges() { return {0.5, 0.85, 0.95, 1.0}; }

double rms(std::span<const double> values) {
  if (values.empty()) throw Error("rms of an empty list");
  double sum_sq = 0.0;
  for (double v : values) sum_sq += v * v;
  return std::sqrt(sum_sq / static_cast<double>(values.size()));
}

double accuracy(const std::vector<Prediction>& preds, const Dataset& ds) {
  if (ds.docs.empty()) throw Error("accuracy on empty dataset");
  const std::vector<int> cls = align_predictions(preds, ds);
  std::int64_t correct = 0;
  for (std::size_t i = 0; i < ds.docs.size(); ++i)
    if (predicted_or_throw(cls, ds, i) == ds.docs[i].label) ++correct;
  return static_cast<double>(correct) / static_cast<double>(ds.docs.size());
}

double auc(const std::vector<Prediction>& preds, const Dataset& ds,
           int positive_class) {
  if (ds.num_classes() != 2) throw Error("auc requires a binary task");
  if (positive_class < 0 || positive_class > 1)
    throw Error("auc positive_class out of range");

  std::unordered_map<std::string, const Prediction*> by_id;
  for (const Prediction& p : preds) by_id[p.doc_id] = &p;

  // (score of positive class, is actually positive)
  std::vector<std::pair<double, bool>> points;
  points.reserve(ds.docs.size());
  std::int64_t n_pos = 0, n_neg = 0;
  for (const Document& doc : ds.docs) {
    auto it = by_id.find(doc.id);
    if (it == by_id.end())
      throw Error("missing prediction for document " + doc.id);
    const Prediction& p = *it->second;
    if (p.scores.size() != 2)
      throw Error("auc requires per-class probability scores");
    const bool positive = doc.label == positive_class;
    (positive ? n_pos : n_neg)++;
    points.emplace_back(p.scores[positive_class], positive);
  }
  if (n_pos == 0 || n_neg == 0)
    throw MetricUndefined("auc undefined: need both classes present");

  // Rank-sum with midranks for ties.
  std::sort(points.begin(), points.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  double rank_sum_pos = 0.0;
  std::size_t i = 0;
  while (i < points.size()) {
    std::size_t j = i;
    while (j < points.size() && points[j].first == points[i].first) ++j;
    // Ranks i+1 .. j averaged over the tie run.
    const double midrank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k)
      if (points[k].second) rank_sum_pos += midrank;
    i = j;
  }
  const double u = rank_sum_pos -
                   static_cast<double>(n_pos) * (static_cast<double>(n_pos) + 1.0) / 2.0;
  return u / (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

const GapCell& BiasReport::ppr_cell(GapKind kind) const {
  if (kind == GapKind::SgPpr) return sg_ppr;
  if (kind == GapKind::CgPpr) return cg_ppr;
  throw Error("ppr_cell called with a per-class kind");
}

const std::vector<GapCell>& BiasReport::class_cells(GapKind kind) const {
  switch (kind) {
    case GapKind::SgTpr:
      return sg_tpr;
    case GapKind::CgTpr:
      return cg_tpr;
    case GapKind::SgFpr:
      return sg_fpr;
    case GapKind::CgFpr:
      return cg_fpr;
    default:
      throw Error("class_cells called with a PPR kind");
  }
}

bool BiasReport::has_missing() const {
  if (positive_class.has_value() && (sg_ppr.missing() || cg_ppr.missing()))
    return true;
  for (const auto* cells : {&sg_tpr, &cg_tpr, &sg_fpr, &cg_fpr})
    for (const GapCell& cell : *cells)
      if (cell.missing()) return true;
  return false;
}

BiasReport bias_report(const Classifier& model, const Dataset& ds,
                       const GenderLexicon& lex,
                       const BiasReportOptions& options) {
  if (ds.docs.empty()) throw Error("bias_report on empty dataset");
  if (options.positive_class &&
      (*options.positive_class < 0 || *options.positive_class >= ds.num_classes()))
    throw Error("positive_class out of range");
  if (!options.bucket_edges.empty()) {
    if (options.bucket_edges.size() < 2)
      throw Error("bucketing needs at least two edges");
    if (!options.positive_class)
      throw Error("bucketing requires positive_class");
    if (!std::is_sorted(options.bucket_edges.begin(), options.bucket_edges.end()))
      throw Error("bucket edges must be ascending");
  }

  BiasReport report;
  report.model_id = options.model_id.empty() ? model.id() : options.model_id;
  report.dataset_id = options.dataset_id;
  report.seed = options.seed;
  report.class_names = ds.class_names;
  report.positive_class = options.positive_class;

  std::vector<Prediction> preds;
  preds.reserve(ds.docs.size());
  for (const Document& doc : ds.docs) {
    Prediction p = model.predict_text(doc.text);
    p.doc_id = doc.id;
    preds.push_back(std::move(p));
  }

  report.accuracy = accuracy(preds, ds);
  if (ds.num_classes() == 2 && !preds.empty() && preds[0].scores.size() == 2) {
    try {
      report.auc = auc(preds, ds, options.positive_class.value_or(1));
    } catch (const MetricUndefined&) {
      // Single-class data: AUC simply stays absent.
    }
  }

  auto capture = [](auto&& compute) -> GapCell {
    GapCell cell;
    try {
      cell.score = compute();
    } catch (const MetricUndefined& e) {
      cell.missing_reason = e.what();
    }
    return cell;
  };

  if (options.positive_class) {
    report.sg_ppr = capture([&] {
      return statistical_ppr_gap(preds, ds, *options.positive_class);
    });
  } else {
    report.sg_ppr.missing_reason = "positive_class not set";
  }
  const int num_classes = ds.num_classes();
  for (int y = 0; y < num_classes; ++y) {
    report.sg_tpr.push_back(
        capture([&] { return statistical_tpr_gap(preds, ds, y); }));
    report.sg_fpr.push_back(
        capture([&] { return statistical_fpr_gap(preds, ds, y); }));
  }

  // Causal side: classify both do-versions of every gendered document
  // once, then slice per kind and class.
  std::vector<std::size_t> gendered;
  for (std::size_t i = 0; i < ds.docs.size(); ++i)
    if (ds.docs[i].gender != Gender::Unknown) gendered.push_back(i);
  const std::vector<DoPairOutcome> outcomes =
      evaluate_do_pairs(model, ds, lex, gendered, /*num_threads=*/0);

  auto causal_cell = [&](GapKind kind, int class_index) -> GapCell {
    std::vector<DoPairOutcome> slice;
    for (std::size_t k = 0; k < gendered.size(); ++k) {
      const int label = ds.docs[gendered[k]].label;
      if (kind == GapKind::CgTpr && label != class_index) continue;
      if (kind == GapKind::CgFpr && label == class_index) continue;
      slice.push_back(outcomes[k]);
    }
    GapCell cell;
    if (slice.empty()) {
      cell.missing_reason = empty_population_reason(ds, kind, class_index);
      return cell;
    }
    const std::optional<int> cls = kind == GapKind::CgPpr
                                       ? std::nullopt
                                       : std::optional<int>(class_index);
    cell.score = causal_from_outcomes(slice, kind, cls, class_index);
    return cell;
  };

  if (options.positive_class) {
    report.cg_ppr = causal_cell(GapKind::CgPpr, *options.positive_class);
  } else {
    report.cg_ppr.missing_reason = "positive_class not set";
  }
  for (int y = 0; y < num_classes; ++y) {
    report.cg_tpr.push_back(causal_cell(GapKind::CgTpr, y));
    report.cg_fpr.push_back(causal_cell(GapKind::CgFpr, y));
  }

  // Confidence buckets, PPR gaps only, gendered documents only.
  if (options.bucket_edges.size() >= 2) {
    const auto& edges = options.bucket_edges;
    const int positive = *options.positive_class;
    const std::vector<int> cls = align_predictions(preds, ds);
    for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
      BucketReport bucket;
      bucket.low = edges[e];
      bucket.high = edges[e + 1];
      bucket.last = e + 2 == edges.size();

      GroupRate female, male;
      std::int64_t cg_sum = 0, cg_count = 0;
      for (std::size_t k = 0; k < gendered.size(); ++k) {
        const Document& doc = ds.docs[gendered[k]];
        const double c = doc.gender_confidence;
        const bool in_bucket =
            c >= bucket.low && (c < bucket.high || (bucket.last && c == bucket.high));
        if (!in_bucket) continue;
        GroupRate& group = doc.gender == Gender::Female ? female : male;
        ++group.count;
        if (cls[gendered[k]] == positive) ++group.hits;
        cg_sum += (outcomes[k].female_pred == positive ? 1 : 0) -
                  (outcomes[k].male_pred == positive ? 1 : 0);
        ++cg_count;
      }
      bucket.count_female = female.count;
      bucket.count_male = male.count;
      if (female.count == 0)
        bucket.sg_ppr.missing_reason = "empty group: female";
      else if (male.count == 0)
        bucket.sg_ppr.missing_reason = "empty group: male";
      else
        bucket.sg_ppr.score = make_score(GapKind::SgPpr, std::nullopt, female, male);
      if (cg_count == 0) {
        bucket.cg_ppr.missing_reason = "empty population for cg_ppr";
      } else {
        GapScore score;
        score.kind = GapKind::CgPpr;
        score.value = static_cast<double>(cg_sum) / static_cast<double>(cg_count);
        score.support_female = cg_count;
        score.support_male = cg_count;
        bucket.cg_ppr.score = score;
      }
      report.buckets.push_back(std::move(bucket));
    }
  }

  // RMS per kind over the defined values.
  auto rms_of = [&](GapKind kind) -> std::optional<double> {
    std::vector<double> values;
    if (kind == GapKind::SgPpr || kind == GapKind::CgPpr) {
      const GapCell& cell = kind == GapKind::SgPpr ? report.sg_ppr : report.cg_ppr;
      if (cell.score) values.push_back(cell.score->value);
    } else {
      for (const GapCell& cell : report.class_cells(kind))
        if (cell.score) values.push_back(cell.score->value);
    }
    if (values.empty()) return std::nullopt;
    return rms(values);
  };
  for (int k = 0; k < kNumGapKinds; ++k)
    report.rms_by_kind[k] = rms_of(static_cast<GapKind>(k));

  return report;
}

// --- Serialization ----------------------------------------------------

namespace {

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

ordered_json cell_to_json(const GapCell& cell,
                          const std::string& class_name = std::string()) {
  ordered_json obj = ordered_json::object();
  if (!class_name.empty()) obj["class"] = class_name;
  if (cell.score) {
    obj["value"] = cell.score->value;
    obj["support_f"] = cell.score->support_female;
    obj["support_m"] = cell.score->support_male;
  } else {
    obj["missing"] = cell.missing_reason;
  }
  return obj;
}

GapCell cell_from_json(const nlohmann::json& obj, GapKind kind,
                       std::optional<int> class_index) {
  GapCell cell;
  if (obj.contains("missing")) {
    cell.missing_reason = obj["missing"].get<std::string>();
    return cell;
  }
  GapScore score;
  score.kind = kind;
  score.class_index = class_index;
  score.value = obj["value"].get<double>();
  score.support_female = obj["support_f"].get<std::int64_t>();
  score.support_male = obj["support_m"].get<std::int64_t>();
  cell.score = score;
  return cell;
}

void append_csv_field(std::string& out, const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) {
    out += field;
    return;
  }
  out += '"';
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
}

void append_csv_row(std::string& out, const std::string& metric,
                    const std::string& cls, const std::string& value,
                    const std::string& support_f,
                    const std::string& support_m) {
  append_csv_field(out, metric);
  out += ',';
  append_csv_field(out, cls);
  out += ',';
  out += value;
  out += ',';
  out += support_f;
  out += ',';
  out += support_m;
  out += '\n';
}

}  // namespace

std::string report_to_json(const BiasReport& report,
                           const std::string& manifest_id) {
  ordered_json obj;
  obj["schema_version"] = BiasReport::kSchemaVersion;
  if (!manifest_id.empty()) obj["manifest_id"] = manifest_id;
  obj["model_id"] = report.model_id;
  obj["dataset_id"] = report.dataset_id;
  obj["seed"] = report.seed;
  obj["classes"] = report.class_names;
  if (report.positive_class)
    obj["positive_class"] = report.class_names[*report.positive_class];
  else
    obj["positive_class"] = nullptr;

  obj["sg_ppr"] = cell_to_json(report.sg_ppr);
  obj["cg_ppr"] = cell_to_json(report.cg_ppr);
  const std::pair<const char*, const std::vector<GapCell>*> arrays[] = {
      {"sg_tpr", &report.sg_tpr},
      {"cg_tpr", &report.cg_tpr},
      {"sg_fpr", &report.sg_fpr},
      {"cg_fpr", &report.cg_fpr}};
  for (const auto& [name, cells] : arrays) {
    ordered_json arr = ordered_json::array();
    for (std::size_t y = 0; y < cells->size(); ++y)
      arr.push_back(cell_to_json((*cells)[y], report.class_names[y]));
    obj[name] = std::move(arr);
  }

  ordered_json rms_obj = ordered_json::object();
  for (int k = 0; k < kNumGapKinds; ++k)
    if (report.rms_by_kind[k])
      rms_obj[kKindNames[k]] = *report.rms_by_kind[k];
  obj["rms"] = std::move(rms_obj);

  obj["accuracy"] = report.accuracy;
  if (report.auc)
    obj["auc"] = *report.auc;
  else
    obj["auc"] = nullptr;

  ordered_json buckets = ordered_json::array();
  for (const BucketReport& bucket : report.buckets) {
    ordered_json b;
    b["low"] = bucket.low;
    b["high"] = bucket.high;
    b["count_f"] = bucket.count_female;
    b["count_m"] = bucket.count_male;
    b["sg_ppr"] = cell_to_json(bucket.sg_ppr);
    b["cg_ppr"] = cell_to_json(bucket.cg_ppr);
    buckets.push_back(std::move(b));
  }
  obj["buckets"] = std::move(buckets);
  return obj.dump(2) + "\n";
}

BiasReport report_from_json(const std::string& json_text) {
  nlohmann::json obj;
  try {
    obj = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad report JSON: ") + e.what());
  }
  if (obj.value("schema_version", 0) != BiasReport::kSchemaVersion)
    throw ParseError("unsupported report schema_version");

  BiasReport report;
  report.model_id = obj.value("model_id", std::string());
  report.dataset_id = obj.value("dataset_id", std::string());
  report.seed = obj.value("seed", std::uint64_t{0});
  report.class_names = obj["classes"].get<std::vector<std::string>>();
  if (!obj["positive_class"].is_null()) {
    const std::string name = obj["positive_class"].get<std::string>();
    for (std::size_t i = 0; i < report.class_names.size(); ++i)
      if (report.class_names[i] == name)
        report.positive_class = static_cast<int>(i);
    if (!report.positive_class)
      throw ParseError("positive_class not in classes");
  }

  report.sg_ppr = cell_from_json(obj["sg_ppr"], GapKind::SgPpr, std::nullopt);
  report.cg_ppr = cell_from_json(obj["cg_ppr"], GapKind::CgPpr, std::nullopt);
  const std::pair<const char*, std::vector<GapCell>*> arrays[] = {
      {"sg_tpr", &report.sg_tpr},
      {"cg_tpr", &report.cg_tpr},
      {"sg_fpr", &report.sg_fpr},
      {"cg_fpr", &report.cg_fpr}};
  const GapKind kinds[] = {GapKind::SgTpr, GapKind::CgTpr, GapKind::SgFpr,
                           GapKind::CgFpr};
  for (int a = 0; a < 4; ++a) {
    const auto& arr = obj[arrays[a].first];
    for (std::size_t y = 0; y < arr.size(); ++y)
      arrays[a].second->push_back(
          cell_from_json(arr[y], kinds[a], static_cast<int>(y)));
  }

  if (obj.contains("rms"))
    for (int k = 0; k < kNumGapKinds; ++k)
      if (obj["rms"].contains(kKindNames[k]))
        report.rms_by_kind[k] = obj["rms"][kKindNames[k]].get<double>();

  report.accuracy = obj["accuracy"].get<double>();
  if (!obj["auc"].is_null()) report.auc = obj["auc"].get<double>();

  if (obj.contains("buckets")) {
    const auto& arr = obj["buckets"];
    for (std::size_t i = 0; i < arr.size(); ++i) {
      BucketReport bucket;
      bucket.low = arr[i]["low"].get<double>();
      bucket.high = arr[i]["high"].get<double>();
      bucket.last = i + 1 == arr.size();
      bucket.count_female = arr[i]["count_f"].get<std::int64_t>();
      bucket.count_male = arr[i]["count_m"].get<std::int64_t>();
      bucket.sg_ppr =
          cell_from_json(arr[i]["sg_ppr"], GapKind::SgPpr, std::nullopt);
      bucket.cg_ppr =
          cell_from_json(arr[i]["cg_ppr"], GapKind::CgPpr, std::nullopt);
      report.buckets.push_back(std::move(bucket));
    }
  }
  return report;
}

std::string report_to_csv(const BiasReport& report,
                          const std::string& manifest_id) {
  std::string out = "metric,class,value,support_f,support_m\n";
  auto emit_cell = [&](const char* metric, const GapCell& cell,
                       const std::string& cls) {
    if (!cell.score) return;
    append_csv_row(out, metric, cls, format_double(cell.score->value),
                   std::to_string(cell.score->support_female),
                   std::to_string(cell.score->support_male));
  };
  emit_cell("sg_ppr", report.sg_ppr, "");
  emit_cell("cg_ppr", report.cg_ppr, "");
  const std::pair<const char*, const std::vector<GapCell>*> arrays[] = {
      {"sg_tpr", &report.sg_tpr},
      {"cg_tpr", &report.cg_tpr},
      {"sg_fpr", &report.sg_fpr},
      {"cg_fpr", &report.cg_fpr}};
  for (const auto& [name, cells] : arrays)
    for (std::size_t y = 0; y < cells->size(); ++y)
      emit_cell(name, (*cells)[y], report.class_names[y]);
  for (int k = 0; k < kNumGapKinds; ++k)
    if (report.rms_by_kind[k])
      append_csv_row(out, std::string("rms_") + kKindNames[k], "",
                     format_double(*report.rms_by_kind[k]), "", "");
  append_csv_row(out, "accuracy", "", format_double(report.accuracy), "", "");
  if (report.auc) append_csv_row(out, "auc", "", format_double(*report.auc), "", "");
  if (!manifest_id.empty())
    append_csv_row(out, "manifest_id", "", manifest_id, "", "");
  return out;
}

}  // namespace fairgap
