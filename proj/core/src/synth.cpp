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

#include "fairgap/synth.hpp"

#include <string>

#include <nlohmann/json.hpp>

#include "fairgap/error.hpp"
#include "fairgap/random.hpp"

namespace fairgap {

namespace {

// How strongly content tokens lean toward their own class: a content
// slot draws from the document's class pool with this probability and
// uniformly from the other classes' pools otherwise. Below 1.0 so that
// some documents are content-ambiguous and gender signal can tip them.
constexpr double kContentPurity = 0.7;

// Proxy tokens are emitted twice so the confounder outweighs the single
// template pronoun once both are learned.
constexpr int kProxyRepeat = 2;

double skew_for(const SynthConfig& config, int cls) {
  return config.gender_skew.empty() ? 0.5 : config.gender_skew[cls];
}

}  // namespace

void validate(const SynthConfig& config) {
  if (config.num_classes < 1) throw Error("num_classes must be positive");
  if (config.docs_per_class < 1) throw Error("docs_per_class must be positive");
  if (config.content_tokens_per_class < 1)
    throw Error("content_tokens_per_class must be positive");
  if (config.doc_length < 1) throw Error("doc_length must be positive");
  if (!config.gender_skew.empty() &&
      config.gender_skew.size() != static_cast<std::size_t>(config.num_classes))
    throw Error("gender_skew needs one entry per class");
  for (double p : config.gender_skew)
    if (!(p >= 0.0 && p <= 1.0)) throw Error("gender_skew outside [0,1]");
  if (!(config.explicit_rate >= 0.0 && config.explicit_rate <= 1.0))
    throw Error("explicit_rate outside [0,1]");
  if (!(config.proxy_strength >= 0.0 && config.proxy_strength <= 1.0))
    throw Error("proxy_strength outside [0,1]");
}

SynthConfig synth_config_from_json(const std::string& json_text) {
  nlohmann::json obj;
  try {
    obj = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad synth config: ") + e.what());
  }
  SynthConfig config;
  config.num_classes = obj.value("num_classes", config.num_classes);
  config.docs_per_class = obj.value("docs_per_class", config.docs_per_class);
  if (obj.contains("gender_skew"))
    config.gender_skew = obj["gender_skew"].get<std::vector<double>>();
  config.explicit_rate = obj.value("explicit_rate", config.explicit_rate);
  config.proxy_strength = obj.value("proxy_strength", config.proxy_strength);
  config.content_tokens_per_class =
      obj.value("content_tokens_per_class", config.content_tokens_per_class);
  config.doc_length = obj.value("doc_length", config.doc_length);
  config.seed = obj.value("seed", config.seed);
  validate(config);
  return config;
}

std::string synth_config_to_json(const SynthConfig& config) {
  nlohmann::ordered_json obj;
  obj["num_classes"] = config.num_classes;
  obj["docs_per_class"] = config.docs_per_class;
  std::vector<double> skew;
  for (int y = 0; y < config.num_classes; ++y) skew.push_back(skew_for(config, y));
  obj["gender_skew"] = skew;
  obj["explicit_rate"] = config.explicit_rate;
  obj["proxy_strength"] = config.proxy_strength;
  obj["content_tokens_per_class"] = config.content_tokens_per_class;
  obj["doc_length"] = config.doc_length;
  obj["seed"] = config.seed;
  return obj.dump(2) + "\n";
}

Dataset generate(const SynthConfig& config) {
  validate(config);

  Dataset ds;
  for (int y = 0; y < config.num_classes; ++y)
    ds.class_names.push_back("class" + std::to_string(y));
  ds.provenance["generator"] = "synth";
  ds.provenance["seed"] = std::to_string(config.seed);
  ds.docs.reserve(static_cast<std::size_t>(config.num_classes) *
                  config.docs_per_class);

  Rng rng(config.seed);
  for (int y = 0; y < config.num_classes; ++y) {
    for (int k = 0; k < config.docs_per_class; ++k) {
      const Gender gender =
          rng.bernoulli(skew_for(config, y)) ? Gender::Female : Gender::Male;
      const bool spell_it_out = rng.bernoulli(config.explicit_rate);
      const bool carry_proxy = rng.bernoulli(config.proxy_strength);

      std::string text;
      if (spell_it_out) {
        text = gender == Gender::Female ? "she wrote that" : "he wrote that";
      }
      for (int t = 0; t < config.doc_length; ++t) {
        int pool = y;
        if (config.num_classes > 1 && !rng.bernoulli(kContentPurity)) {
          // Uniform over the other classes.
          int other = static_cast<int>(
              rng.below(static_cast<std::uint64_t>(config.num_classes - 1)));
          pool = other >= y ? other + 1 : other;
        }
        const int word = static_cast<int>(rng.below(
            static_cast<std::uint64_t>(config.content_tokens_per_class)));
        if (!text.empty()) text += ' ';
        text += 'c' + std::to_string(pool) + 'w' + std::to_string(word);
      }
      if (carry_proxy) {
        const char* proxy =
            gender == Gender::Female ? "proxyfem" : "proxymal";
        for (int r = 0; r < kProxyRepeat; ++r) {
          text += ' ';
          text += proxy;
        }
      }

      Document doc;
      doc.id = "synth-" + std::to_string(y) + "-" + std::to_string(k);
      doc.text = std::move(text);
      doc.label = y;
      doc.gender = gender;
      ds.docs.push_back(std::move(doc));
    }
  }
  return ds;
}

}  // namespace fairgap
