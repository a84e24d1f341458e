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

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace arclens {

// One whitespace-delimited word with the metadata the rule engine needs.
// `surface` keeps the original casing; `folded` is the lowercase lookup key.
struct Token {
  std::string surface;
  std::string folded;
  bool is_all_caps = false;   // >= 2 letters, all uppercase
  int trailing_exclaims = 0;  // run of '!' immediately after the word
};

// A sentence span. Offsets are byte offsets into the normalized text and
// `text` is exactly normalized_text[start_char, end_char).
struct SentenceRecord {
  std::size_t index = 0;
  std::size_t start_char = 0;
  std::size_t end_char = 0;
  std::size_t char_length = 0;  // == end_char - start_char
  std::string text;
  std::vector<Token> tokens;
};

struct Document {
  std::string source_id;
  std::size_t raw_length = 0;  // code points in the raw input
  std::string text;            // normalized text all offsets refer to
  std::vector<SentenceRecord> sentences;

  std::size_t token_count() const;
};

// Canonicalizes quotes and line endings:
//   U+201C/U+201D -> ", U+2018/U+2019 -> ', CRLF/CR -> LF, leading BOM dropped.
// Everything else (em-dashes, "--", accents) passes through unchanged.
// Throws ParamError naming the byte offset on malformed UTF-8. Idempotent.
std::string normalize_text(std::string_view raw);

// Number of Unicode code points; input must be valid UTF-8.
std::size_t count_codepoints(std::string_view text);

// Abbreviations that suppress a sentence break after their period.
// Stored lowercase with the trailing period, e.g. "mr.".
const std::set<std::string>& default_abbreviations();
std::set<std::string> load_abbreviations(const std::string& path);

// Rule-based segmentation of normalized text. Breaks on . ! ? followed by
// whitespace and a capital or quote, except after a listed abbreviation or
// a single-letter initial. A closing quote followed by a lowercase
// continuation does not break ("Stop!" he said). Blank lines always break.
// Whitespace-only segments are discarded; tokens are filled in.
std::vector<SentenceRecord> split_sentences(
    std::string_view normalized,
    const std::set<std::string>& abbreviations = default_abbreviations());

// Whitespace split, then each chunk is cut at em/en dashes, "--" runs and
// ellipsis characters; edge punctuation is stripped into metadata. Internal
// apostrophes and single hyphens stay ("wasn't", "mowing-machine").
// Emoticon chunks such as ":)" are kept whole.
std::vector<Token> tokenize(std::string_view sentence_text);

// Lowercase fold: ASCII A-Z plus the Latin-1 uppercase range. Per-character
// and locale-independent.
std::string fold_case(std::string_view word);

struct IngestOptions {
  int strip_lines = 0;  // raw lines dropped before normalization
  const std::set<std::string>* abbreviations = nullptr;
};

Document ingest(std::string_view raw, std::string source_id,
                const IngestOptions& options = {});

} // namespace arclens
