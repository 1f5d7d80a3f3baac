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

#include "fairgap/debias.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "fairgap/corpus.hpp"
#include "fairgap/error.hpp"
#include "fairgap/perturb.hpp"
#include "fairgap/random.hpp"

namespace fairgap {

namespace {

// Per-class document indices by gender, for the resamplers.
struct ClassGroups {
  std::vector<std::size_t> female;
  std::vector<std::size_t> male;
};

std::vector<ClassGroups> group_by_class(const Dataset& ds) {
  std::vector<ClassGroups> groups(ds.class_names.size());
  for (std::size_t i = 0; i < ds.docs.size(); ++i) {
    const Document& doc = ds.docs[i];
    if (doc.gender == Gender::Female)
      groups[doc.label].female.push_back(i);
    else if (doc.gender == Gender::Male)
      groups[doc.label].male.push_back(i);
  }
  return groups;
}

// Balancing needs someone to duplicate or something to keep on each
// side; one empty gender and one populated gender is unbalanceable.
// Classes with no gendered documents at all are fine: already balanced.
void check_balanceable(const Dataset& ds, const std::vector<ClassGroups>& groups) {
  for (std::size_t y = 0; y < groups.size(); ++y) {
    const bool f_empty = groups[y].female.empty();
    const bool m_empty = groups[y].male.empty();
    if (f_empty != m_empty)
      throw Error("class \"" + ds.class_names[y] + "\" has no " +
                  (f_empty ? "female" : "male") + " documents");
  }
}

}  // namespace

const char* to_string(DebiasMethod method) {
  switch (method) {
    case DebiasMethod::None:
      return "none";
    case DebiasMethod::OS:
      return "os";
    case DebiasMethod::US:
      return "us";
    case DebiasMethod::RW:
      return "rw";
    case DebiasMethod::CDA:
      return "cda";
    case DebiasMethod::OS_CDA:
      return "os-cda";
    case DebiasMethod::US_CDA:
      return "us-cda";
    case DebiasMethod::RW_CDA:
      return "rw-cda";
  }
  return "none";
}

DebiasMethod debias_method_from_string(const std::string& s) {
  if (s == "none") return DebiasMethod::None;
  if (s == "os") return DebiasMethod::OS;
  if (s == "us") return DebiasMethod::US;
  if (s == "rw") return DebiasMethod::RW;
  if (s == "cda") return DebiasMethod::CDA;
  if (s == "os-cda") return DebiasMethod::OS_CDA;
  if (s == "us-cda") return DebiasMethod::US_CDA;
  if (s == "rw-cda") return DebiasMethod::RW_CDA;
  throw ParseError("unknown debias method: \"" + s + "\"");
}

const char* to_string(CompositionOrder order) {
  return order == CompositionOrder::ResampleThenCDA ? "resample-first"
                                                    : "cda-first";
}

CompositionOrder composition_order_from_string(const std::string& s) {
  if (s == "resample-first") return CompositionOrder::ResampleThenCDA;
  if (s == "cda-first") return CompositionOrder::CDAThenResample;
  throw ParseError("unknown composition order: \"" + s + "\"");
}

const char* to_string(CfWeightStrategy strategy) {
  switch (strategy) {
    case CfWeightStrategy::SameAsOriginal:
      return "same";
    case CfWeightStrategy::CounterfactualGender:
      return "cf-gender";
    case CfWeightStrategy::UnitWeight:
      return "unit";
  }
  return "unit";
}

CfWeightStrategy cf_weight_strategy_from_string(const std::string& s) {
  if (s == "same") return CfWeightStrategy::SameAsOriginal;
  if (s == "cf-gender") return CfWeightStrategy::CounterfactualGender;
  if (s == "unit") return CfWeightStrategy::UnitWeight;
  throw ParseError("unknown cf-weight strategy: \"" + s + "\"");
}

Dataset oversample(const Dataset& ds, std::uint64_t seed) {
  const std::vector<ClassGroups> groups = group_by_class(ds);
  check_balanceable(ds, groups);

  Dataset out;
  out.class_names = ds.class_names;
  out.provenance = ds.provenance;
  out.provenance["debias"] = "os";
  out.docs = ds.docs;

  Rng root(seed);
  std::unordered_map<std::string, int> copies;  // per source id
  for (std::size_t y = 0; y < groups.size(); ++y) {
    const auto& f = groups[y].female;
    const auto& m = groups[y].male;
    if (f.size() == m.size()) continue;
    const auto& minority = f.size() < m.size() ? f : m;
    const std::size_t deficit =
        (f.size() < m.size() ? m.size() : f.size()) - minority.size();
    Rng rng = root.fork(y);
    for (std::size_t k = 0; k < deficit; ++k) {
      const Document& original =
          ds.docs[minority[static_cast<std::size_t>(rng.below(minority.size()))]];
      Document dup = original;
      dup.id = original.id + "#os" + std::to_string(++copies[original.id]);
      dup.source_id = original.id;
      out.docs.push_back(std::move(dup));
    }
  }
  return out;
}

Dataset undersample(const Dataset& ds, std::uint64_t seed) {
  const std::vector<ClassGroups> groups = group_by_class(ds);
  check_balanceable(ds, groups);

  Rng root(seed);
  std::unordered_set<std::size_t> removed;
  for (std::size_t y = 0; y < groups.size(); ++y) {
    const auto& f = groups[y].female;
    const auto& m = groups[y].male;
    if (f.size() == m.size()) continue;
    const auto& majority = f.size() > m.size() ? f : m;
    const std::size_t keep = std::min(f.size(), m.size());
    std::vector<std::size_t> order = majority;
    Rng rng = root.fork(y);
    rng.shuffle(order);
    for (std::size_t k = keep; k < order.size(); ++k) removed.insert(order[k]);
  }

  Dataset out;
  out.class_names = ds.class_names;
  out.provenance = ds.provenance;
  out.provenance["debias"] = "us";
  out.docs.reserve(ds.docs.size() - removed.size());
  for (std::size_t i = 0; i < ds.docs.size(); ++i)
    if (!removed.count(i)) out.docs.push_back(ds.docs[i]);
  return out;
}

namespace {

double kamiran_weight(const JointCounts& counts, Gender g, int label) {
  const double expected = static_cast<double>(counts.gender_total(g)) *
                          static_cast<double>(counts.class_totals[label]);
  const double observed = static_cast<double>(counts.total) *
                          static_cast<double>(counts.count(g, label));
  return expected / observed;
}

}  // namespace

Dataset reweight(const Dataset& ds) {
  const JointCounts counts = joint_counts(ds);
  for (std::size_t y = 0; y < ds.class_names.size(); ++y)
    for (Gender g : {Gender::Female, Gender::Male})
      if (counts.count(g, static_cast<int>(y)) == 0)
        throw Error(std::string("empty cell (") + to_string(g) + ", \"" +
                    ds.class_names[y] + "\")");

  Dataset out = ds;
  out.provenance["debias"] = "rw";
  for (Document& doc : out.docs) {
    if (doc.gender == Gender::Unknown) continue;
    doc.weight = kamiran_weight(counts, doc.gender, doc.label);
  }
  return out;
}

namespace {

Dataset resample(const Dataset& ds, DebiasMethod method, std::uint64_t seed) {
  return method == DebiasMethod::OS_CDA ? oversample(ds, seed)
                                        : undersample(ds, seed);
}

Dataset compose_resampled(const Dataset& ds, const DebiasPlan& plan,
                          const GenderLexicon& lex) {
  if (plan.order == CompositionOrder::ResampleThenCDA)
    return augment_cda(resample(ds, plan.method, plan.seed), lex);

  // CDA first, then balance originals and counterfactuals separately so
  // each keeps its own gender mix.
  const Dataset augmented = augment_cda(ds, lex);
  Dataset originals, counterfactuals;
  originals.class_names = counterfactuals.class_names = ds.class_names;
  for (const Document& doc : augmented.docs)
    (doc.is_counterfactual ? counterfactuals : originals).docs.push_back(doc);

  const Dataset balanced_orig = resample(originals, plan.method, plan.seed);
  const Dataset balanced_cf =
      resample(counterfactuals, plan.method, Rng(plan.seed).fork(1).seed());

  Dataset out;
  out.class_names = ds.class_names;
  out.provenance = augmented.provenance;
  out.docs = balanced_orig.docs;
  out.docs.insert(out.docs.end(), balanced_cf.docs.begin(),
                  balanced_cf.docs.end());
  out.provenance["debias"] = to_string(plan.method);
  return out;
}

Dataset compose_reweighted(const Dataset& ds, const DebiasPlan& plan,
                           const GenderLexicon& lex) {
  const JointCounts counts = joint_counts(ds);
  const Dataset reweighted = reweight(ds);
  Dataset out = augment_cda(reweighted, lex);
  for (Document& doc : out.docs) {
    if (!doc.is_counterfactual) continue;
    switch (plan.cf_weight) {
      case CfWeightStrategy::SameAsOriginal:
        break;  // counterfactual() already copied the original's weight
      case CfWeightStrategy::CounterfactualGender:
        doc.weight = kamiran_weight(counts, doc.gender, doc.label);
        break;
      case CfWeightStrategy::UnitWeight:
        doc.weight = 1.0;
        break;
    }
  }
  out.provenance["debias"] = to_string(plan.method);
  return out;
}

}  // namespace

Dataset compose(const Dataset& ds, const DebiasPlan& plan,
                const GenderLexicon& lex) {
  switch (plan.method) {
    case DebiasMethod::OS_CDA:
    case DebiasMethod::US_CDA:
      return compose_resampled(ds, plan, lex);
    case DebiasMethod::RW_CDA:
      return compose_reweighted(ds, plan, lex);
    default:
      throw Error(std::string("compose requires a composed method, got ") +
                  to_string(plan.method));
  }
}

Dataset apply_debias(const Dataset& ds, const DebiasPlan& plan,
                     const GenderLexicon& lex) {
  switch (plan.method) {
    case DebiasMethod::None:
      return ds;
    case DebiasMethod::OS:
      return oversample(ds, plan.seed);
    case DebiasMethod::US:
      return undersample(ds, plan.seed);
    case DebiasMethod::RW:
      return reweight(ds);
    case DebiasMethod::CDA:
      return augment_cda(ds, lex);
    case DebiasMethod::OS_CDA:
    case DebiasMethod::US_CDA:
    case DebiasMethod::RW_CDA:
      return compose(ds, plan, lex);
  }
  throw Error("unknown debias method");
}

}  // namespace fairgap
