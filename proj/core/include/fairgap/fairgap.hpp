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

#ifndef FAIRGAP_FAIRGAP_HPP_
#define FAIRGAP_FAIRGAP_HPP_

#include "fairgap/corpus.hpp"
#include "fairgap/debias.hpp"
#include "fairgap/document.hpp"
#include "fairgap/error.hpp"
#include "fairgap/lexicon.hpp"
#include "fairgap/metrics.hpp"
#include "fairgap/model.hpp"
#include "fairgap/perturb.hpp"
#include "fairgap/random.hpp"
#include "fairgap/synth.hpp"

#endif  // FAIRGAP_FAIRGAP_HPP_
