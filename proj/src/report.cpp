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

#include "arclens/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "arclens/errors.hpp"

namespace arclens {

namespace fs = std::filesystem;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failed: " + path);
  return buf.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write file: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("write failed: " + path);
}

std::string format_number(double value) {
  if (value == 0) value = 0;  // collapse -0
  char buf[40];
  // to_chars: nine significant digits, independent of the global locale
  const auto [end, ec] =
      std::to_chars(buf, buf + sizeof(buf), value,
                    std::chars_format::general, 9);
  (void)ec;
  return std::string(buf, end);
}

double round_to_9(double value) {
  const std::string text = format_number(value);
  double out = 0;
  std::from_chars(text.data(), text.data() + text.size(), out);
  return out;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (const char c : bytes) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

namespace {

std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

// Order-preserving JSON emitter; all doubles go through format_number so
// output is byte-stable.
class JsonWriter {
public:
  std::string take() { return std::move(out_); }

  JsonWriter& begin_object() { return open('{'); }
  JsonWriter& end_object() { return close('}'); }
  JsonWriter& begin_array() { return open('['); }
  JsonWriter& end_array() { return close(']'); }

  JsonWriter& key(std::string_view name) {
    separate();
    write_string(name);
    out_ += ':';
    pending_value_ = true;
    return *this;
  }

  JsonWriter& value(std::string_view s) {
    separate();
    write_string(s);
    return *this;
  }
  JsonWriter& value(const char* s) { return value(std::string_view(s)); }
  JsonWriter& value(double v) {
    separate();
    out_ += format_number(v);
    return *this;
  }
  JsonWriter& value(std::int64_t v) {
    separate();
    out_ += std::to_string(v);
    return *this;
  }
  JsonWriter& value(std::uint64_t v) {
    separate();
    out_ += std::to_string(v);
    return *this;
  }
  JsonWriter& value(int v) { return value(static_cast<std::int64_t>(v)); }
  JsonWriter& value(bool v) {
    separate();
    out_ += v ? "true" : "false";
    return *this;
  }
  JsonWriter& null() {
    separate();
    out_ += "null";
    return *this;
  }

private:
  JsonWriter& open(char c) {
    separate();
    out_ += c;
    first_.push_back(true);
    return *this;
  }
  JsonWriter& close(char c) {
    out_ += c;
    first_.pop_back();
    return *this;
  }
  void separate() {
    if (pending_value_) {
      pending_value_ = false;
      return;
    }
    if (!first_.empty()) {
      if (!first_.back()) out_ += ',';
      first_.back() = false;
    }
  }
  void write_string(std::string_view s) {
    out_ += '"';
    for (const char c : s) {
      switch (c) {
        case '"': out_ += "\\\""; break;
        case '\\': out_ += "\\\\"; break;
        case '\n': out_ += "\\n"; break;
        case '\r': out_ += "\\r"; break;
        case '\t': out_ += "\\t"; break;
        case '\b': out_ += "\\b"; break;
        case '\f': out_ += "\\f"; break;
        default:
          if (static_cast<unsigned char>(c) < 0x20) {
            char esc[8];
            std::snprintf(esc, sizeof(esc), "\\u%04x",
                          static_cast<unsigned>(static_cast<unsigned char>(c)));
            out_ += esc;
          } else {
            out_ += c;
          }
      }
    }
    out_ += '"';
  }

  std::string out_;
  std::vector<bool> first_;
  bool pending_value_ = false;
};

void write_vector(JsonWriter& w, const Eigen::VectorXd& v) {
  w.begin_array();
  for (Eigen::Index i = 0; i < v.size(); ++i) w.value(v[i]);
  w.end_array();
}

void write_point(JsonWriter& w, const InflectionPoint& p,
                 const ContextWindow* context) {
  w.begin_object();
  w.key("label").value(p.label);
  w.key("kind").value(p.kind == ExtremumKind::maximum ? "max" : "min");
  w.key("position").value(p.position);
  w.key("percent").value(p.position * 100.0);
  w.key("value").value(p.value);
  w.key("sentence_index").value(static_cast<std::int64_t>(p.sentence_index));
  w.key("is_global_max").value(p.is_global_max);
  w.key("is_global_min").value(p.is_global_min);
  if (context != nullptr) {
    w.key("context").begin_object();
    w.key("before").begin_array();
    for (const auto& s : context->before) w.value(s);
    w.end_array();
    w.key("after").begin_array();
    for (const auto& s : context->after) w.value(s);
    w.end_array();
    w.end_object();
  }
  w.end_object();
}

void write_arc_params(JsonWriter& w, const Arc& arc) {
  w.key("smoother_id").value(smoother_name(arc.smoother_id));
  w.key("id").value(arc.id);
  w.key("params").begin_object();
  switch (arc.smoother_id) {
    case SmootherId::rolling:
      w.key("window_pct").value(arc.window_pct);
      break;
    case SmootherId::dct:
      w.key("low_pass").value(arc.low_pass);
      w.key("scale_range").value(arc.scale_range);
      break;
    case SmootherId::loess:
      w.key("span").value(arc.span);
      w.key("degree").value(arc.degree);
      break;
  }
  w.end_object();
}

} // namespace

AuditReport audit_long_sentences(const Document& doc, int threshold) {
  if (threshold <= 0) throw ParamError("audit threshold must be > 0");
  AuditReport report;
  report.total_sentences = doc.sentences.size();
  report.threshold_chars = threshold;
  for (const auto& s : doc.sentences) {
    if (s.char_length > static_cast<std::size_t>(threshold))
      report.long_sentences.push_back({s.index, s.char_length, s.text});
  }
  report.long_count = report.long_sentences.size();
  report.upper_bound_error_note =
      "Candidates for manual splitting-error review; the error percentage "
      "is assigned by a human reviewer, not by this tool.";
  return report;
}

std::string document_to_json(const Document& doc) {
  JsonWriter w;
  w.begin_object();
  w.key("source_id").value(doc.source_id);
  w.key("raw_length").value(doc.raw_length);
  w.key("text").value(doc.text);
  w.key("sentences").begin_array();
  for (const auto& s : doc.sentences) {
    w.begin_object();
    w.key("index").value(s.index);
    w.key("start_char").value(s.start_char);
    w.key("end_char").value(s.end_char);
    w.key("char_length").value(s.char_length);
    w.key("text").value(s.text);
    w.key("tokens").begin_array();
    for (const auto& t : s.tokens) {
      w.begin_object();
      w.key("surface").value(t.surface);
      w.key("folded").value(t.folded);
      w.key("is_all_caps").value(t.is_all_caps);
      w.key("trailing_exclaims").value(t.trailing_exclaims);
      w.end_object();
    }
    w.end_array();
    w.end_object();
  }
  w.end_array();
  w.end_object();
  return w.take();
}

Document document_from_json(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParamError(std::string("malformed document JSON: ") + e.what());
  }
  try {
    Document doc;
    doc.source_id = j.at("source_id").get<std::string>();
    doc.raw_length = j.at("raw_length").get<std::size_t>();
    doc.text = j.at("text").get<std::string>();
    for (const auto& js : j.at("sentences")) {
      SentenceRecord rec;
      rec.index = js.at("index").get<std::size_t>();
      rec.start_char = js.at("start_char").get<std::size_t>();
      rec.end_char = js.at("end_char").get<std::size_t>();
      rec.char_length = js.at("char_length").get<std::size_t>();
      rec.text = js.at("text").get<std::string>();
      for (const auto& jt : js.at("tokens")) {
        Token tok;
        tok.surface = jt.at("surface").get<std::string>();
        tok.folded = jt.at("folded").get<std::string>();
        tok.is_all_caps = jt.at("is_all_caps").get<bool>();
        tok.trailing_exclaims = jt.at("trailing_exclaims").get<int>();
        rec.tokens.push_back(std::move(tok));
      }
      doc.sentences.push_back(std::move(rec));
    }
    return doc;
  } catch (const nlohmann::json::exception& e) {
    throw ParamError(std::string("document JSON missing fields: ") + e.what());
  }
}

std::string series_csv(const std::vector<ScoredSentenceRow>& rows) {
  std::string out =
      "index,start_char,end_char,n_tokens,lexical,rules_raw,rules_compound\n";
  for (const auto& r : rows) {
    out += std::to_string(r.index);
    out += ',';
    out += std::to_string(r.start_char);
    out += ',';
    out += std::to_string(r.end_char);
    out += ',';
    out += std::to_string(r.n_tokens);
    out += ',';
    out += format_number(r.lexical);
    out += ',';
    out += format_number(r.rules_raw);
    out += ',';
    out += format_number(r.rules_compound);
    out += '\n';
  }
  return out;
}

namespace {

std::vector<std::string_view> split_line(std::string_view line, char sep) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (true) {
    const std::size_t next = line.find(sep, pos);
    if (next == std::string_view::npos) {
      parts.push_back(line.substr(pos));
      break;
    }
    parts.push_back(line.substr(pos, next - pos));
    pos = next + 1;
  }
  return parts;
}

double parse_double(std::string_view text, std::size_t line_no) {
  double v = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || end != text.data() + text.size())
    throw ParamError("CSV: bad number on line " + std::to_string(line_no));
  return v;
}

std::size_t parse_index(std::string_view text, std::size_t line_no) {
  std::size_t v = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || end != text.data() + text.size())
    throw ParamError("CSV: bad integer on line " + std::to_string(line_no));
  return v;
}

// Calls fn(line_view, line_no) for every non-empty line after the header,
// verifying the header matches.
template <typename Fn>
void for_csv_rows(const std::string& text, std::string_view header, Fn fn) {
  std::size_t pos = 0;
  std::size_t line_no = 0;
  bool saw_header = false;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line(text.data() + pos,
                          (nl == std::string::npos ? text.size() : nl) - pos);
    pos = nl == std::string::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (!saw_header) {
      if (line != header)
        throw ParamError("CSV: unexpected header (want '" +
                         std::string(header) + "')");
      saw_header = true;
      continue;
    }
    fn(line, line_no);
  }
  if (!saw_header) throw ParamError("CSV: empty input");
}

} // namespace

std::vector<ScoredSentenceRow> parse_series_csv(const std::string& text) {
  std::vector<ScoredSentenceRow> rows;
  for_csv_rows(
      text, "index,start_char,end_char,n_tokens,lexical,rules_raw,rules_compound",
      [&](std::string_view line, std::size_t line_no) {
        const auto parts = split_line(line, ',');
        if (parts.size() != 7)
          throw ParamError("CSV: wrong column count on line " +
                           std::to_string(line_no));
        ScoredSentenceRow r;
        r.index = parse_index(parts[0], line_no);
        r.start_char = parse_index(parts[1], line_no);
        r.end_char = parse_index(parts[2], line_no);
        r.n_tokens = parse_index(parts[3], line_no);
        r.lexical = parse_double(parts[4], line_no);
        r.rules_raw = parse_double(parts[5], line_no);
        r.rules_compound = parse_double(parts[6], line_no);
        rows.push_back(r);
      });
  return rows;
}

std::string arc_csv(const Arc& arc) {
  std::string out = "position,value\n";
  for (Eigen::Index i = 0; i < arc.positions.size(); ++i) {
    out += format_number(arc.positions[i]);
    out += ',';
    out += format_number(arc.values[i]);
    out += '\n';
  }
  return out;
}

Arc parse_arc_csv(const std::string& text) {
  std::vector<double> positions;
  std::vector<double> values;
  for_csv_rows(text, "position,value",
               [&](std::string_view line, std::size_t line_no) {
                 const auto parts = split_line(line, ',');
                 if (parts.size() != 2)
                   throw ParamError("CSV: wrong column count on line " +
                                    std::to_string(line_no));
                 positions.push_back(parse_double(parts[0], line_no));
                 values.push_back(parse_double(parts[1], line_no));
               });
  if (positions.size() < 2) throw ParamError("arc CSV needs at least 2 rows");

  Arc arc;
  arc.id = "arc";
  arc.positions = Eigen::Map<Eigen::VectorXd>(positions.data(),
                                              static_cast<Eigen::Index>(
                                                  positions.size()));
  arc.values = Eigen::Map<Eigen::VectorXd>(values.data(),
                                           static_cast<Eigen::Index>(
                                               values.size()));
  for (Eigen::Index i = 1; i < arc.positions.size(); ++i) {
    if (!(arc.positions[i] > arc.positions[i - 1]))
      throw ParamError("arc CSV positions must be strictly increasing");
  }
  arc.valid_start = arc.positions[0];
  arc.valid_end = arc.positions[arc.positions.size() - 1];
  // Uniform spacing of 1/(N-1) recovers the source sentence count.
  const double spacing = arc.positions[1] - arc.positions[0];
  arc.n_source =
      spacing > 0 ? static_cast<Eigen::Index>(std::lround(1.0 / spacing)) + 1
                  : arc.positions.size();
  return arc;
}

std::string band_csv(const NullBand& band) {
  std::string out = "position,lower,upper,original\n";
  for (Eigen::Index i = 0; i < band.grid.size(); ++i) {
    out += format_number(band.grid[i]);
    out += ',';
    out += format_number(band.lower[i]);
    out += ',';
    out += format_number(band.upper[i]);
    out += ',';
    out += format_number(band.original[i]);
    out += '\n';
  }
  return out;
}

NullBand parse_band_csv(const std::string& text) {
  std::vector<double> grid, lower, upper, original;
  for_csv_rows(text, "position,lower,upper,original",
               [&](std::string_view line, std::size_t line_no) {
                 const auto parts = split_line(line, ',');
                 if (parts.size() != 4)
                   throw ParamError("CSV: wrong column count on line " +
                                    std::to_string(line_no));
                 grid.push_back(parse_double(parts[0], line_no));
                 lower.push_back(parse_double(parts[1], line_no));
                 upper.push_back(parse_double(parts[2], line_no));
                 original.push_back(parse_double(parts[3], line_no));
               });
  if (grid.size() < 2) throw ParamError("band CSV needs at least 2 rows");
  NullBand band;
  const auto m = static_cast<Eigen::Index>(grid.size());
  band.grid = Eigen::Map<Eigen::VectorXd>(grid.data(), m);
  band.lower = Eigen::Map<Eigen::VectorXd>(lower.data(), m);
  band.upper = Eigen::Map<Eigen::VectorXd>(upper.data(), m);
  band.original = Eigen::Map<Eigen::VectorXd>(original.data(), m);
  return band;
}

std::string inflection_json(const std::vector<InflectionPoint>& points,
                            const std::vector<ContextWindow>& contexts) {
  if (!contexts.empty() && contexts.size() != points.size())
    throw ParamError("contexts must be empty or match points");
  JsonWriter w;
  w.begin_object();
  w.key("points").begin_array();
  for (std::size_t i = 0; i < points.size(); ++i)
    write_point(w, points[i], contexts.empty() ? nullptr : &contexts[i]);
  w.end_array();
  w.end_object();
  return w.take();
}

std::vector<InflectionPoint> inflection_points_from_json(
    const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParamError(std::string("malformed points JSON: ") + e.what());
  }
  const nlohmann::json& arr = j.is_array() ? j : j.at("points");
  std::vector<InflectionPoint> out;
  for (const auto& jp : arr) {
    InflectionPoint p;
    const std::string kind = jp.at("kind").get<std::string>();
    if (kind != "max" && kind != "min")
      throw ParamError("points JSON: kind must be max|min");
    p.kind = kind == "max" ? ExtremumKind::maximum : ExtremumKind::minimum;
    p.position = jp.at("position").get<double>();
    p.value = jp.at("value").get<double>();
    p.sentence_index = jp.at("sentence_index").get<Eigen::Index>();
    p.label = jp.at("label").get<std::string>();
    p.is_global_max = jp.value("is_global_max", false);
    p.is_global_min = jp.value("is_global_min", false);
    out.push_back(std::move(p));
  }
  return out;
}

std::string audit_json(const AuditReport& report) {
  JsonWriter w;
  w.begin_object();
  w.key("total_sentences").value(report.total_sentences);
  w.key("threshold_chars").value(report.threshold_chars);
  w.key("long_count").value(report.long_count);
  w.key("upper_bound_error_note").value(report.upper_bound_error_note);
  w.key("long_sentences").begin_array();
  for (const auto& s : report.long_sentences) {
    w.begin_object();
    w.key("index").value(s.index);
    w.key("char_length").value(s.char_length);
    w.key("text").value(s.text);
    w.end_object();
  }
  w.end_array();
  w.end_object();
  return w.take();
}

RuleConfig rule_config_from_json(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParamError(std::string("malformed rule config JSON: ") + e.what());
  }
  RuleConfig config = RuleConfig::defaults();
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "negation_words") {
        config.negation_words.clear();
        for (const auto& word : value)
          config.negation_words.insert(fold_case(word.get<std::string>()));
      } else if (key == "boosters") {
        config.boosters.clear();
        for (const auto& [word, inc] : value.items())
          config.boosters[fold_case(word)] = inc.get<double>();
      } else if (key == "negation_window") {
        config.negation_window = value.get<int>();
      } else if (key == "negation_multiplier") {
        config.negation_multiplier = value.get<double>();
      } else if (key == "exclaim_increment") {
        config.exclaim_increment = value.get<double>();
      } else if (key == "exclaim_cap") {
        config.exclaim_cap = value.get<int>();
      } else if (key == "allcaps_boost") {
        config.allcaps_boost = value.get<double>();
      } else if (key == "compound_alpha") {
        config.compound_alpha = value.get<double>();
      } else {
        throw ParamError("rule config: unknown key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParamError(std::string("rule config JSON: ") + e.what());
  }
  config.validate();
  return config;
}

RunReport run_pipeline(const RunOptions& options) {
  if (options.trials < 2) throw ParamError("trials must be >= 2");
  if (options.grid < 2) throw ParamError("grid must be >= 2");

  RunReport report;
  report.options = options;

  const std::string raw = read_file(options.text_path);
  report.input_digest = hex64(fnv1a64(raw));

  IngestOptions ingest_options;
  ingest_options.strip_lines = options.strip_lines;
  const std::string source_id =
      options.source_id.empty() ? fs::path(options.text_path).filename().string()
                                : options.source_id;
  report.doc = ingest(raw, source_id, ingest_options);
  const auto n = static_cast<Eigen::Index>(report.doc.sentences.size());
  if (n < 10)
    throw ParamError("document too short for arc analysis (need >= 10 sentences)");

  const Lexicon lexicon = load_lexicon(
      options.lexicon_path, fs::path(options.lexicon_path).filename().string());
  report.lexicon_name = lexicon.name;
  report.lexicon_size = lexicon.size();

  const SentimentSeries lexical =
      score_document(report.doc, lexicon, EngineId::lexical);
  const SentimentSeries rules =
      score_document(report.doc, lexicon, EngineId::rules, options.rules);

  report.rows.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& s = report.doc.sentences[static_cast<std::size_t>(i)];
    report.rows.push_back({s.index, s.start_char, s.end_char, s.tokens.size(),
                           lexical.values[i], rules.values[i],
                           normalize_compound(rules.values[i],
                                              options.rules.compound_alpha)});
  }
  report.stats_lexical = distribution_stats(lexical.values);
  report.stats_rules = distribution_stats(rules.values);

  const Eigen::VectorXd& signal =
      options.engine == EngineId::lexical ? lexical.values : rules.values;

  report.arcs.push_back(rolling_mean(signal, options.window_pct));
  for (const int lp : options.low_pass)
    report.arcs.push_back(dct_lowpass(signal, lp, options.scale_range));
  report.arcs.push_back(loess_smooth(signal, options.span, options.degree));

  const Arc& rolling_arc = report.arcs.front();
  const double prominence = options.min_prominence < 0
                                ? auto_prominence(rolling_arc)
                                : options.min_prominence;
  report.extrema = find_extrema(rolling_arc, prominence);
  for (const auto& point : report.extrema)
    report.contexts.push_back(
        extract_context(report.doc, point, options.context_k));

  // Macro-shape extrema come from the first (lowest) DCT cut.
  if (!options.low_pass.empty()) {
    const Arc& macro = report.arcs[1];
    report.dct_extrema = find_extrema(macro, auto_prominence(macro));
  }

  // Agreement pairs the rolling arc with the highest DCT cut present.
  const Arc* detail_dct = nullptr;
  for (const auto& arc : report.arcs)
    if (arc.smoother_id == SmootherId::dct &&
        (detail_dct == nullptr || arc.low_pass > detail_dct->low_pass))
      detail_dct = &arc;
  if (detail_dct != nullptr)
    report.agreement = compare_arcs(rolling_arc, *detail_dct, options.grid);

  SmootherSpec null_smoother;
  null_smoother.method = SmootherId::rolling;
  null_smoother.window_pct = options.window_pct;
  report.band =
      null_band(report.doc, lexicon, options.engine, options.rules,
                null_smoother, options.trials, options.seed, options.grid);

  report.audit = audit_long_sentences(report.doc, options.audit_threshold);
  return report;
}

std::string run_report_json(const RunReport& report) {
  const RunOptions& opt = report.options;
  JsonWriter w;
  w.begin_object();

  w.key("tool").begin_object();
  w.key("name").value(kToolName);
  w.key("version").value(kToolVersion);
  w.end_object();

  w.key("timestamp").value(opt.timestamp);

  w.key("input").begin_object();
  w.key("source_id").value(report.doc.source_id);
  w.key("path").value(opt.text_path);
  w.key("digest_fnv1a64").value(report.input_digest);
  w.key("raw_length").value(report.doc.raw_length);
  w.key("strip_lines").value(opt.strip_lines);
  w.key("sentences").value(report.doc.sentences.size());
  w.key("tokens").value(report.doc.token_count());
  w.end_object();

  w.key("lexicon").begin_object();
  w.key("name").value(report.lexicon_name);
  w.key("path").value(opt.lexicon_path);
  w.key("size").value(report.lexicon_size);
  w.end_object();

  w.key("engine").begin_object();
  w.key("id").value(engine_name(opt.engine));
  w.key("rule_config").begin_object();
  w.key("negation_words").begin_array();
  for (const auto& word : opt.rules.negation_words) w.value(word);
  w.end_array();
  w.key("negation_window").value(opt.rules.negation_window);
  w.key("negation_multiplier").value(opt.rules.negation_multiplier);
  w.key("boosters").begin_object();
  for (const auto& [word, inc] : opt.rules.boosters) w.key(word).value(inc);
  w.end_object();
  w.key("exclaim_increment").value(opt.rules.exclaim_increment);
  w.key("exclaim_cap").value(opt.rules.exclaim_cap);
  w.key("allcaps_boost").value(opt.rules.allcaps_boost);
  w.key("compound_alpha").value(opt.rules.compound_alpha);
  w.end_object();
  w.end_object();

  w.key("distribution_stats").begin_object();
  const auto stats_block = [&](const char* name, const DistributionStats& s) {
    w.key(name).begin_object();
    w.key("mean").value(s.mean);
    w.key("variance").value(s.variance);
    if (s.skewness.has_value())
      w.key("skewness").value(*s.skewness);
    else
      w.key("skewness").null();
    w.end_object();
  };
  stats_block("lexical", report.stats_lexical);
  stats_block("rules_raw", report.stats_rules);
  w.end_object();

  w.key("arcs").begin_array();
  for (const auto& arc : report.arcs) {
    w.begin_object();
    write_arc_params(w, arc);
    w.key("valid_start").value(arc.valid_start);
    w.key("valid_end").value(arc.valid_end);
    w.key("n_source").value(static_cast<std::int64_t>(arc.n_source));
    w.key("positions");
    write_vector(w, arc.positions);
    w.key("values");
    write_vector(w, arc.values);
    w.end_object();
  }
  w.end_array();

  w.key("inflection_points").begin_array();
  for (std::size_t i = 0; i < report.extrema.size(); ++i)
    write_point(w, report.extrema[i],
                i < report.contexts.size() ? &report.contexts[i] : nullptr);
  w.end_array();

  w.key("dct_inflection_points").begin_array();
  for (const auto& p : report.dct_extrema) write_point(w, p, nullptr);
  w.end_array();

  w.key("agreement").begin_object();
  w.key("arcs").begin_array();
  w.value(report.agreement.arc_ids[0]);
  w.value(report.agreement.arc_ids[1]);
  w.end_array();
  if (report.agreement.pearson_r.has_value())
    w.key("pearson_r").value(*report.agreement.pearson_r);
  else
    w.key("pearson_r").null();
  w.key("extrema_matches").value(report.agreement.extrema_matches);
  w.end_object();

  w.key("null_band").begin_object();
  w.key("n_trials").value(report.band.n_trials);
  w.key("base_seed").value(static_cast<std::uint64_t>(report.band.base_seed));
  w.key("grid");
  write_vector(w, report.band.grid);
  w.key("lower");
  write_vector(w, report.band.lower);
  w.key("upper");
  write_vector(w, report.band.upper);
  w.key("original");
  write_vector(w, report.band.original);
  w.key("separation").value(report.band.separation);
  w.end_object();

  w.key("audit").begin_object();
  w.key("total_sentences").value(report.audit.total_sentences);
  w.key("threshold_chars").value(report.audit.threshold_chars);
  w.key("long_count").value(report.audit.long_count);
  w.key("upper_bound_error_note").value(report.audit.upper_bound_error_note);
  w.key("long_sentences").begin_array();
  for (const auto& s : report.audit.long_sentences) {
    w.begin_object();
    w.key("index").value(s.index);
    w.key("char_length").value(s.char_length);
    w.key("text").value(s.text);
    w.end_object();
  }
  w.end_array();
  w.end_object();

  w.end_object();
  return w.take();
}

void export_run(const RunReport& report, const std::string& out_dir) {
  std::error_code ec;
  fs::create_directories(fs::path(out_dir) / "arcs", ec);
  if (ec) throw IoError("cannot create output directory: " + out_dir);

  const auto under = [&](const std::string& name) {
    return (fs::path(out_dir) / name).string();
  };
  write_file(under("report.json"), run_report_json(report));
  write_file(under("series.csv"), series_csv(report.rows));
  for (const auto& arc : report.arcs)
    write_file((fs::path(out_dir) / "arcs" / (arc.id + ".csv")).string(),
               arc_csv(arc));
  write_file(under("band.csv"), band_csv(report.band));
  write_file(under("plot.svg"),
             render_arc_svg(report.arcs, report.extrema, &report.band,
                            report.options.plot));
}

} // namespace arclens
