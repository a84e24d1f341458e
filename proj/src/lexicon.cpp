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

#include "arclens/lexicon.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "arclens/corpus.hpp"
#include "arclens/errors.hpp"

namespace arclens {

Lexicon parse_lexicon(std::string_view content, const std::string& name) {
  Lexicon lex;
  lex.name = name;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= content.size()) {
    const std::size_t nl = content.find('\n', pos);
    std::string_view line = content.substr(
        pos, nl == std::string_view::npos ? content.size() - pos : nl - pos);
    ++line_no;
    pos = nl == std::string_view::npos ? content.size() + 1 : nl + 1;

    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;

    const std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos || tab == 0) {
      throw ParamError("lexicon " + name + ": malformed line " +
                       std::to_string(line_no) + " (expected word<TAB>score)");
    }
    const std::string word = fold_case(line.substr(0, tab));
    const std::string_view score_text = line.substr(tab + 1);

    double score = 0;
    const auto [end, ec] = std::from_chars(
        score_text.data(), score_text.data() + score_text.size(), score);
    if (ec != std::errc{} || end != score_text.data() + score_text.size() ||
        !std::isfinite(score)) {
      throw ParamError("lexicon " + name + ": unparseable score on line " +
                       std::to_string(line_no));
    }
    if (!lex.entries.emplace(word, score).second) {
      throw ParamError("lexicon " + name + ": duplicate word '" + word +
                       "' on line " + std::to_string(line_no));
    }
  }
  return lex;
}

Lexicon load_lexicon(const std::string& path, const std::string& name) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open lexicon file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_lexicon(buf.str(), name);
}

std::string serialize_lexicon(const Lexicon& lexicon) {
  std::string out;
  char num[64];
  for (const auto& [word, score] : lexicon.entries) {
    const auto [end, ec] = std::to_chars(num, num + sizeof(num), score);
    (void)ec;
    out += word;
    out += '\t';
    out.append(num, static_cast<std::size_t>(end - num));
    out += '\n';
  }
  return out;
}

} // namespace arclens
