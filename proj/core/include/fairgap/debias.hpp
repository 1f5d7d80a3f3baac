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

#ifndef FAIRGAP_DEBIAS_HPP_
#define FAIRGAP_DEBIAS_HPP_

#include <cstdint>
#include <string>

#include "fairgap/document.hpp"
#include "fairgap/lexicon.hpp"

namespace fairgap {

enum class DebiasMethod { None, OS, US, RW, CDA, OS_CDA, US_CDA, RW_CDA };

// For the composed resampling methods: whether resampling sees the
// original set (then CDA doubles the balanced result) or the augmented
// set (originals and counterfactuals balanced independently).
enum class CompositionOrder { ResampleThenCDA, CDAThenResample };

// Weight given to counterfactual documents under RW_CDA. Original
// documents always carry reweight() values computed before augmentation.
enum class CfWeightStrategy { SameAsOriginal, CounterfactualGender, UnitWeight };

struct DebiasPlan {
  DebiasMethod method = DebiasMethod::None;
  CompositionOrder order = CompositionOrder::ResampleThenCDA;
  CfWeightStrategy cf_weight = CfWeightStrategy::UnitWeight;
  std::uint64_t seed = 0;
};

// CLI spellings: none, os, us, rw, cda, os-cda, us-cda, rw-cda.
const char* to_string(DebiasMethod method);
DebiasMethod debias_method_from_string(const std::string& s);
const char* to_string(CompositionOrder order);
CompositionOrder composition_order_from_string(const std::string& s);
const char* to_string(CfWeightStrategy strategy);
CfWeightStrategy cf_weight_strategy_from_string(const std::string& s);

// Within each class, duplicates the minority gender's documents (drawn
// with replacement, seeded) until N(Female, y) = N(Male, y). Duplicates
// get ids "<original>#os<n>" and source_id provenance, appended after
// the originals grouped by class. Unknown documents pass through.
// A class where exactly one gender is empty cannot be balanced: Error.
// Classes with no gendered documents at all are left alone.
Dataset oversample(const Dataset& ds, std::uint64_t seed);

// Within each class, removes a seeded sample of the majority gender so
// N(Female, y) = N(Male, y); survivors keep their original order.
// Same error rule as oversample.
Dataset undersample(const Dataset& ds, std::uint64_t seed);

// Kamiran-Calders reweighting: every Female/Male document gets weight
//   N(g) * N(y) / (N * N(g, y))
// computed over gendered documents only; Unknown documents keep weight 1.
// Any empty (gender, class) cell is an Error naming the cell.
Dataset reweight(const Dataset& ds);

// The composed strategies (method must be OS_CDA, US_CDA, or RW_CDA):
//   OS_CDA/US_CDA + ResampleThenCDA: resample, then augment the result.
//   OS_CDA/US_CDA + CDAThenResample: augment, then resample originals
//     and counterfactuals as two independent populations (counterfactual
//     resampling is seeded with a derived sub-seed), originals first in
//     the output.
//   RW_CDA: augment, originals weighted by reweight() of the input,
//     counterfactuals per plan.cf_weight.
Dataset compose(const Dataset& ds, const DebiasPlan& plan,
                const GenderLexicon& lex);

// Dispatches any plan, composed or not. None copies the input.
Dataset apply_debias(const Dataset& ds, const DebiasPlan& plan,
                     const GenderLexicon& lex);

}  // namespace fairgap

#endif  // FAIRGAP_DEBIAS_HPP_
