// Copyright 2026 The arclens Authors
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

#pragma once

#include <Eigen/Core>
#include <map>
#include <set>
#include <string>

#include "arclens/corpus.hpp"
#include "arclens/lexicon.hpp"

namespace arclens {

// Heuristic constants for the rule-augmented engine. All values are
// configurable and travel into run reports.
struct RuleConfig {
  std::set<std::string> negation_words;
  int negation_window = 3;          // preceding tokens scanned for negators
  double negation_multiplier = -0.74;
  std::map<std::string, double> boosters;  // word -> signed increment
  double exclaim_increment = 0.292;        // per '!' in the sentence
  int exclaim_cap = 3;
  double allcaps_boost = 0.733;
  double compound_alpha = 15.0;

  static RuleConfig defaults();
  void validate() const;  // ParamError on out-of-range fields
};

enum class EngineId { lexical, rules };

std::string engine_name(EngineId id);
EngineId engine_from_name(const std::string& name);

// Per-sentence scores for one (engine, lexicon) pair, in sentence order.
struct SentimentSeries {
  EngineId engine_id = EngineId::lexical;
  std::string lexicon_name;
  Eigen::VectorXd values;

  Eigen::Index n() const { return values.size(); }
};

// Sum of lexicon valences over the sentence tokens. No context effects.
double score_lexical(const SentenceRecord& sentence, const Lexicon& lexicon);

// Lexical scoring adjusted for negation, degree modifiers, capitalization
// emphasis and exclamation marks. Per lexicon hit: the valence is multiplied
// by negation_multiplier if a negator sits in the preceding window, each
// booster in the window adds sign(valence)*increment, and an all-caps token
// adds sign(valence)*allcaps_boost unless the whole sentence shouts. The
// sentence total then gains sign(total)*exclaim_increment per '!' up to
// exclaim_cap. Returns the raw, unnormalized sum.
double score_rule_augmented(const SentenceRecord& sentence,
                            const Lexicon& lexicon, const RuleConfig& config);

// raw / sqrt(raw^2 + alpha): odd, strictly increasing, bounded in (-1, 1).
double normalize_compound(double raw, double alpha);

// Applies the chosen engine to every sentence. ParamError on an empty
// document. Deterministic; sentences are independent.
SentimentSeries score_document(const Document& doc, const Lexicon& lexicon,
                               EngineId engine_id,
                               const RuleConfig& config = RuleConfig::defaults());

} // namespace arclens
