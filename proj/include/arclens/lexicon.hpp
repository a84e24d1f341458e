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

#include <map>
#include <string>
#include <string_view>

namespace arclens {

// Word -> valence table. Keys are case-folded and unique; values are finite.
// Immutable after load, safe for concurrent reads.
struct Lexicon {
  std::string name;
  std::map<std::string, double, std::less<>> entries;

  std::size_t size() const { return entries.size(); }

  // Stored valence, or exactly 0 for words not in the table. Total over all
  // inputs; expects a case-folded token.
  double lookup(std::string_view folded_word) const {
    const auto it = entries.find(folded_word);
    return it == entries.end() ? 0.0 : it->second;
  }
};

// Parses `word<TAB>score` lines; '#' comments and blank lines are skipped;
// words are case-folded. Duplicate words and unparseable scores raise
// ParamError naming the offender and line. Missing file raises IoError.
Lexicon load_lexicon(const std::string& path, const std::string& name);

// Same format from memory, for tests and embedded fixtures.
Lexicon parse_lexicon(std::string_view content, const std::string& name);

// Canonical file form: UTF-8, LF endings, entries sorted by word, scores in
// shortest round-trip notation. Reloading reproduces the entry map exactly.
std::string serialize_lexicon(const Lexicon& lexicon);

} // namespace arclens
