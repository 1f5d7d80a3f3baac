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

#ifndef FAIRGAP_ERROR_HPP_
#define FAIRGAP_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace fairgap {

// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a requested metric has an empty population, e.g. a TPR gap
// for a class with no female-labeled documents. Callers that want partial
// results (see bias_report) catch this and record the reason instead.
class MetricUndefined : public Error {
 public:
  explicit MetricUndefined(const std::string& what) : Error(what) {}
};

// Raised on malformed input files: bad JSONL, bad lexicon rows, bad config.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(what) {}
};

}  // namespace fairgap

#endif  // FAIRGAP_ERROR_HPP_
