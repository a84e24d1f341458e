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

#include "arclens/engines.hpp"

#include <algorithm>
#include <cmath>

#include "arclens/errors.hpp"

namespace arclens {

namespace {

double sign_of(double v) { return v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0); }

// Every token with enough letters to qualify is shouting; emphasis carries
// no contrast then.
bool sentence_all_caps(const SentenceRecord& sentence) {
  bool any = false;
  for (const auto& tok : sentence.tokens) {
    int letters = 0;
    for (const char c : tok.surface)
      if ((c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z')) ++letters;
    if (letters < 2) continue;
    if (!tok.is_all_caps) return false;
    any = true;
  }
  return any;
}

} // namespace

RuleConfig RuleConfig::defaults() {
  RuleConfig c;
  c.negation_words = {
      "not",      "no",       "never",    "none",     "neither",  "nor",
      "nothing",  "nowhere",  "cannot",   "aint",     "ain't",    "arent",
      "aren't",   "cant",     "can't",    "couldnt",  "couldn't", "darent",
      "daren't",  "didnt",    "didn't",   "doesnt",   "doesn't",  "dont",
      "don't",    "hadnt",    "hadn't",   "hasnt",    "hasn't",   "havent",
      "haven't",  "isnt",     "isn't",    "mightnt",  "mightn't", "mustnt",
      "mustn't",  "neednt",   "needn't",  "oughtnt",  "oughtn't", "shant",
      "shan't",   "shouldnt", "shouldn't", "wasnt",   "wasn't",   "werent",
      "weren't",  "wont",     "won't",    "wouldnt",  "wouldn't", "rarely",
      "seldom",   "without",  "hardly",
  };
  const double up = 0.293;
  const double down = -0.293;
  c.boosters = {
      {"absolutely", up},   {"amazingly", up},    {"awfully", up},
      {"completely", up},   {"considerably", up}, {"decidedly", up},
      {"deeply", up},       {"enormously", up},   {"entirely", up},
      {"especially", up},   {"exceptionally", up},{"extremely", up},
      {"fabulously", up},   {"fully", up},        {"greatly", up},
      {"highly", up},       {"hugely", up},       {"incredibly", up},
      {"intensely", up},    {"majorly", up},      {"more", up},
      {"most", up},         {"particularly", up}, {"purely", up},
      {"quite", up},        {"really", up},       {"remarkably", up},
      {"so", up},           {"substantially", up},{"thoroughly", up},
      {"totally", up},      {"tremendously", up}, {"unbelievably", up},
      {"unusually", up},    {"utterly", up},      {"very", up},
      {"almost", down},     {"barely", down},     {"kinda", down},
      {"kindof", down},     {"less", down},       {"little", down},
      {"marginally", down}, {"occasionally", down},{"partly", down},
      {"scarcely", down},   {"slightly", down},   {"somewhat", down},
      {"sorta", down},      {"sortof", down},
  };
  return c;
}

void RuleConfig::validate() const {
  if (negation_window < 1) throw ParamError("negation_window must be >= 1");
  if (exclaim_cap < 0) throw ParamError("exclaim_cap must be >= 0");
  if (!(compound_alpha > 0)) throw ParamError("compound_alpha must be > 0");
}

std::string engine_name(EngineId id) {
  return id == EngineId::lexical ? "lexical" : "rules";
}

EngineId engine_from_name(const std::string& name) {
  if (name == "lexical") return EngineId::lexical;
  if (name == "rules") return EngineId::rules;
  throw ParamError("unknown engine '" + name + "' (expected lexical|rules)");
}

double score_lexical(const SentenceRecord& sentence, const Lexicon& lexicon) {
  double sum = 0;
  for (const auto& tok : sentence.tokens) sum += lexicon.lookup(tok.folded);
  return sum;
}

double score_rule_augmented(const SentenceRecord& sentence,
                            const Lexicon& lexicon, const RuleConfig& config) {
  config.validate();
  const bool shouting = sentence_all_caps(sentence);
  const auto& tokens = sentence.tokens;

  double sum = 0;
  int exclaims = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    exclaims += tokens[i].trailing_exclaims;
    const double valence = lexicon.lookup(tokens[i].folded);
    if (valence == 0) continue;

    double adjusted = valence;
    const std::size_t window_begin =
        i >= static_cast<std::size_t>(config.negation_window)
            ? i - static_cast<std::size_t>(config.negation_window)
            : 0;
    bool negated = false;
    for (std::size_t k = window_begin; k < i; ++k) {
      if (config.negation_words.count(tokens[k].folded) != 0) negated = true;
    }
    if (negated) adjusted *= config.negation_multiplier;
    for (std::size_t k = window_begin; k < i; ++k) {
      const auto it = config.boosters.find(tokens[k].folded);
      if (it != config.boosters.end()) adjusted += sign_of(valence) * it->second;
    }
    if (tokens[i].is_all_caps && !shouting)
      adjusted += sign_of(valence) * config.allcaps_boost;
    sum += adjusted;
  }

  sum += sign_of(sum) * config.exclaim_increment *
         std::min(exclaims, config.exclaim_cap);
  return sum;
}

double normalize_compound(double raw, double alpha) {
  if (!(alpha > 0)) throw ParamError("compound_alpha must be > 0");
  return raw / std::sqrt(raw * raw + alpha);
}

SentimentSeries score_document(const Document& doc, const Lexicon& lexicon,
                               EngineId engine_id, const RuleConfig& config) {
  if (doc.sentences.empty()) throw ParamError("no sentences");
  SentimentSeries series;
  series.engine_id = engine_id;
  series.lexicon_name = lexicon.name;
  series.values.resize(static_cast<Eigen::Index>(doc.sentences.size()));
  for (std::size_t i = 0; i < doc.sentences.size(); ++i) {
    series.values[static_cast<Eigen::Index>(i)] =
        engine_id == EngineId::lexical
            ? score_lexical(doc.sentences[i], lexicon)
            : score_rule_augmented(doc.sentences[i], lexicon, config);
  }
  return series;
}

} // namespace arclens
