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

#include "arclens/corpus.hpp"

#include <array>
#include <cctype>
#include <cstdint>
#include <fstream>

#include "arclens/errors.hpp"

namespace arclens {

namespace {

bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
         c == '\f';
}

bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_letter(char c) { return is_upper(c) || is_lower(c); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Decodes one UTF-8 sequence at `i`, validating shape, overlongs and range.
// Returns the code point and advances `i`. Throws on malformed input.
char32_t decode_utf8(std::string_view s, std::size_t& i) {
  const auto fail = [&](std::size_t at) -> char32_t {
    throw ParamError("invalid UTF-8 byte at offset " + std::to_string(at));
  };
  const unsigned char b0 = static_cast<unsigned char>(s[i]);
  if (b0 < 0x80) {
    ++i;
    return b0;
  }
  int len = 0;
  char32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    return fail(i);
  }
  if (i + static_cast<std::size_t>(len) > s.size()) return fail(i);
  for (int k = 1; k < len; ++k) {
    const unsigned char b = static_cast<unsigned char>(s[i + k]);
    if ((b & 0xC0) != 0x80) return fail(i);  // name the sequence start
    cp = (cp << 6) | (b & 0x3F);
  }
  static constexpr std::array<char32_t, 5> kMin = {0, 0, 0x80, 0x800, 0x10000};
  if (cp < kMin[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF))
    return fail(i);
  i += static_cast<std::size_t>(len);
  return cp;
}

bool is_terminal(char c) { return c == '.' || c == '!' || c == '?'; }

// First byte of the next non-whitespace run, or npos.
std::size_t next_nonspace(std::string_view s, std::size_t from) {
  while (from < s.size() && is_ascii_space(s[from])) ++from;
  return from < s.size() ? from : std::string_view::npos;
}

} // namespace

std::string normalize_text(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  std::size_t i = 0;
  if (raw.size() >= 3 && raw.substr(0, 3) == "\xEF\xBB\xBF") i = 3;
  while (i < raw.size()) {
    const unsigned char b = static_cast<unsigned char>(raw[i]);
    if (b < 0x80) {
      if (b == '\r') {
        if (i + 1 < raw.size() && raw[i + 1] == '\n') ++i;
        out += '\n';
      } else {
        out += static_cast<char>(b);
      }
      ++i;
      continue;
    }
    const std::size_t start = i;
    const char32_t cp = decode_utf8(raw, i);
    switch (cp) {
      case 0x201C:
      case 0x201D:
        out += '"';
        break;
      case 0x2018:
      case 0x2019:
        out += '\'';
        break;
      default:
        out.append(raw.substr(start, i - start));
    }
  }
  return out;
}

std::size_t count_codepoints(std::string_view text) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < text.size();) {
    decode_utf8(text, i);
    ++n;
  }
  return n;
}

std::string fold_case(std::string_view word) {
  std::string out;
  out.reserve(word.size());
  for (std::size_t i = 0; i < word.size(); ++i) {
    const unsigned char b = static_cast<unsigned char>(word[i]);
    if (is_upper(static_cast<char>(b))) {
      out += static_cast<char>(b + 32);
    } else if (b == 0xC3 && i + 1 < word.size()) {
      // Latin-1 uppercase block: U+00C0..U+00DE less the multiplication sign.
      const unsigned char b1 = static_cast<unsigned char>(word[i + 1]);
      out += static_cast<char>(b);
      if (b1 >= 0x80 && b1 <= 0x9E && b1 != 0x97) {
        out += static_cast<char>(b1 + 0x20);
      } else {
        out += static_cast<char>(b1);
      }
      ++i;
    } else {
      out += static_cast<char>(b);
    }
  }
  return out;
}

const std::set<std::string>& default_abbreviations() {
  static const std::set<std::string> kAbbreviations = {
      "mr.",   "mrs.",  "dr.",   "st.",   "ms.",   "prof.", "vs.",
      "e.g.",  "i.e.",  "jr.",   "sr.",   "rev.",  "hon.",  "capt.",
      "col.",  "gen.",  "lt.",   "sgt.",  "maj.",  "messrs.",
      "mme.",  "mlle.", "cf.",   "al.",   "approx.",
  };
  return kAbbreviations;
}

std::set<std::string> load_abbreviations(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open abbreviation file: " + path);
  std::set<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    out.insert(fold_case(line));
  }
  return out;
}

namespace {

// Word immediately preceding text[dot], lowercased, with the period attached;
// internal periods kept so "e.g." matches. Empty if none.
std::string word_before_period(std::string_view text, std::size_t dot) {
  std::size_t b = dot;
  while (b > 0) {
    const char c = text[b - 1];
    if (is_letter(c) || is_digit(c) || c == '.' || c == '\'') {
      --b;
    } else {
      break;
    }
  }
  if (b == dot) return {};
  return fold_case(text.substr(b, dot - b)) + ".";
}

// One-letter initial such as "W." in "W. Ramsay". "a" and "i" are real
// words and stay splittable.
bool is_initial(const std::string& word_with_dot) {
  return word_with_dot.size() == 2 && is_letter(word_with_dot[0]) &&
         word_with_dot[0] != 'a' && word_with_dot[0] != 'i';
}

} // namespace

std::vector<SentenceRecord> split_sentences(
    std::string_view text, const std::set<std::string>& abbreviations) {
  std::vector<SentenceRecord> out;

  const auto emit = [&](std::size_t from, std::size_t to) {
    while (from < to && is_ascii_space(text[from])) ++from;
    while (to > from && is_ascii_space(text[to - 1])) --to;
    if (from >= to) return;
    SentenceRecord rec;
    rec.index = out.size();
    rec.start_char = from;
    rec.end_char = to;
    rec.char_length = to - from;
    rec.text = std::string(text.substr(from, to - from));
    rec.tokens = tokenize(rec.text);
    out.push_back(std::move(rec));
  };

  std::size_t start = 0;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    const char c = text[i];

    if (c == '\n') {
      // A blank line (possibly with trailing spaces) ends the segment.
      std::size_t j = i + 1;
      while (j < n && (text[j] == ' ' || text[j] == '\t')) ++j;
      if (j < n && text[j] == '\n') {
        emit(start, i);
        while (j < n && is_ascii_space(text[j])) ++j;
        start = j;
        i = j;
        continue;
      }
      ++i;
      continue;
    }

    if (!is_terminal(c)) {
      ++i;
      continue;
    }

    std::size_t j = i;
    while (j + 1 < n && is_terminal(text[j + 1])) ++j;  // "?!", "...", "!!!"
    std::size_t end = j;
    bool closing_quote = false;
    if (end + 1 < n && (text[end + 1] == '"' || text[end + 1] == '\'')) {
      closing_quote = true;
      ++end;
    }

    if (end + 1 >= n) {
      i = end + 1;
      continue;  // trailing sentence emitted after the loop
    }
    if (!is_ascii_space(text[end + 1])) {
      i = end + 1;
      continue;  // "life--death", "3.14", "that?--and"
    }
    const std::size_t next = next_nonspace(text, end + 1);
    if (next == std::string_view::npos) {
      i = end + 1;
      continue;
    }

    const char nc = text[next];
    bool breaks = is_upper(nc) || nc == '"' || nc == '\'';
    if (breaks && text[i] == '.' && j == i && !closing_quote) {
      const std::string word = word_before_period(text, i);
      if (!word.empty() &&
          (abbreviations.count(word) != 0 || is_initial(word))) {
        breaks = false;
      }
    }

    if (breaks) {
      emit(start, end + 1);
      start = next;
      i = next;
    } else {
      i = end + 1;
    }
  }
  emit(start, n);
  return out;
}

namespace {

// Explicit forms beyond the eyes/nose/mouth shape check.
bool is_known_emoticon(std::string_view s) {
  static const std::set<std::string, std::less<>> kKnown = {
      "<3",  "</3", ":o",  ":O",  ":-o", ":-O", ":/",  ":-/", ":\\",
      ":|",  ":-|", "xD",  "XD",  "xd",  ":'(", ":')", "D:",  "o_O",
      "O_o", "^_^", "-_-", "(:",  "):",  ";)",  ";-)",
  };
  return kKnown.count(s) != 0;
}

bool is_emoticon(std::string_view s) {
  if (s.size() < 2 || s.size() > 5) return false;
  if (is_known_emoticon(s)) return true;
  std::size_t i = 0;
  const char eye = s[i];
  if (eye != ':' && eye != ';' && eye != '=' && eye != '8') return false;
  ++i;
  if (i < s.size() && (s[i] == '-' || s[i] == '\'' || s[i] == '^')) ++i;
  if (i >= s.size()) return false;
  static constexpr std::string_view kMouths = ")(DPpOo3/\\|*$[]{}";
  return s.size() - i == 1 && kMouths.find(s[i]) != std::string_view::npos;
}

bool is_word_byte(unsigned char b) {
  return is_letter(static_cast<char>(b)) || is_digit(static_cast<char>(b)) ||
         b >= 0x80;
}

// Splits a whitespace-free chunk at em/en dashes, ellipsis chars and runs of
// two or more hyphens, so "you--I" and "life—death" score as two words.
std::vector<std::string_view> split_dashes(std::string_view chunk) {
  std::vector<std::string_view> parts;
  std::size_t begin = 0;
  std::size_t i = 0;
  const auto flush = [&](std::size_t to, std::size_t resume) {
    if (to > begin) parts.push_back(chunk.substr(begin, to - begin));
    begin = resume;
    i = resume;
  };
  while (i < chunk.size()) {
    if (chunk[i] == '-' && i + 1 < chunk.size() && chunk[i + 1] == '-') {
      std::size_t j = i;
      while (j < chunk.size() && chunk[j] == '-') ++j;
      flush(i, j);
      continue;
    }
    if (chunk.size() - i >= 3 && chunk[i] == '\xE2' && chunk[i + 1] == '\x80' &&
        (chunk[i + 2] == '\x93' || chunk[i + 2] == '\x94' ||
         chunk[i + 2] == '\xA6')) {
      flush(i, i + 3);
      continue;
    }
    ++i;
  }
  flush(chunk.size(), chunk.size());
  return parts;
}

void emit_token(std::vector<Token>& out, std::string_view piece) {
  std::size_t b = 0;
  std::size_t e = piece.size();
  while (b < e && !is_word_byte(static_cast<unsigned char>(piece[b]))) ++b;
  while (e > b && !is_word_byte(static_cast<unsigned char>(piece[e - 1]))) --e;
  if (b >= e) return;

  Token tok;
  tok.surface = std::string(piece.substr(b, e - b));
  for (std::size_t p = e; p < piece.size() && piece[p] == '!'; ++p)
    ++tok.trailing_exclaims;

  int letters = 0;
  int lowers = 0;
  for (const char c : tok.surface) {
    if (is_letter(c)) {
      ++letters;
      if (is_lower(c)) ++lowers;
    }
  }
  tok.is_all_caps = letters >= 2 && lowers == 0;
  tok.folded = fold_case(tok.surface);
  out.push_back(std::move(tok));
}

} // namespace

std::vector<Token> tokenize(std::string_view sentence_text) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = sentence_text.size();
  while (i < n) {
    while (i < n && is_ascii_space(sentence_text[i])) ++i;
    std::size_t j = i;
    while (j < n && !is_ascii_space(sentence_text[j])) ++j;
    if (j > i) {
      const std::string_view chunk = sentence_text.substr(i, j - i);
      if (is_emoticon(chunk)) {
        Token tok;
        tok.surface = std::string(chunk);
        tok.folded = fold_case(chunk);
        out.push_back(std::move(tok));
      } else {
        for (const std::string_view piece : split_dashes(chunk))
          emit_token(out, piece);
      }
    }
    i = j;
  }
  return out;
}

std::size_t Document::token_count() const {
  std::size_t n = 0;
  for (const auto& s : sentences) n += s.tokens.size();
  return n;
}

Document ingest(std::string_view raw, std::string source_id,
                const IngestOptions& options) {
  std::string_view body = raw;
  for (int k = 0; k < options.strip_lines && !body.empty(); ++k) {
    const std::size_t nl = body.find('\n');
    if (nl == std::string_view::npos) {
      body = {};
      break;
    }
    body = body.substr(nl + 1);
  }

  Document doc;
  doc.source_id = std::move(source_id);
  doc.text = normalize_text(body);
  doc.raw_length = count_codepoints(body);
  doc.sentences = split_sentences(
      doc.text,
      options.abbreviations ? *options.abbreviations : default_abbreviations());
  return doc;
}

} // namespace arclens
