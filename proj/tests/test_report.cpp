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

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "arclens/arcs.hpp"
#include "arclens/errors.hpp"
#include "arclens/report.hpp"
#include "test_support.hpp"

using namespace arclens;
using namespace testsupport;
namespace fs = std::filesystem;

namespace {

// Minimal well-formedness check: tags balance and nest properly.
bool xml_balanced(const std::string& xml) {
  std::vector<std::string> stack;
  std::size_t i = 0;
  if (xml.rfind("<?xml", 0) != 0) return false;
  i = xml.find("?>");
  if (i == std::string::npos) return false;
  i += 2;
  while (i < xml.size()) {
    const std::size_t open = xml.find('<', i);
    if (open == std::string::npos) break;
    const std::size_t close = xml.find('>', open);
    if (close == std::string::npos) return false;
    std::string tag = xml.substr(open + 1, close - open - 1);
    i = close + 1;
    if (tag.empty()) return false;
    if (tag.back() == '/') continue;  // self-closing
    if (tag[0] == '/') {
      const std::string name = tag.substr(1);
      if (stack.empty() || stack.back() != name) return false;
      stack.pop_back();
    } else {
      const std::size_t space = tag.find_first_of(" \t\n");
      stack.push_back(space == std::string::npos ? tag : tag.substr(0, space));
    }
  }
  return stack.empty();
}

int count_occurrences(const std::string& text, const std::string& needle) {
  int n = 0;
  for (std::size_t at = text.find(needle); at != std::string::npos;
       at = text.find(needle, at + needle.size()))
    ++n;
  return n;
}

Arc simple_arc(std::initializer_list<double> values) {
  Arc arc;
  arc.id = "arc";
  arc.values = Eigen::Map<const Eigen::VectorXd>(
      std::data(values), static_cast<Eigen::Index>(values.size()));
  const auto n = arc.values.size();
  arc.positions.resize(n);
  for (Eigen::Index i = 0; i < n; ++i)
    arc.positions[i] = static_cast<double>(i) / static_cast<double>(n - 1);
  arc.n_source = n;
  return arc;
}

RunOptions sample_options(const std::string& scratch) {
  RunOptions options;
  options.text_path = scratch + "/sample.txt";
  options.lexicon_path = scratch + "/lex.tsv";
  options.trials = 4;
  options.grid = 40;
  return options;
}

std::string make_sample_inputs(const std::string& tag) {
  const std::string scratch =
      (fs::temp_directory_path() / ("arclens_test_" + tag)).string();
  fs::create_directories(scratch);
  const Document doc = synthetic_novel(60, 555);
  write_file(scratch + "/sample.txt", doc.text);
  write_file(scratch + "/lex.tsv", serialize_lexicon(fixture_lexicon()));
  return scratch;
}

} // namespace

TEST_CASE("audit flags only sentences over the threshold") {
  const Document short_doc = ingest("One here. Two here. Three here.", "s");
  const AuditReport none = audit_long_sentences(short_doc, 500);
  CHECK(none.total_sentences == 3);
  CHECK(none.long_count == 0);
  CHECK(none.long_sentences.empty());

  std::string text;
  const std::string filler(620, 'x');
  text += "Short one. ";
  text += "Long " + filler + " one. ";
  text += "Another short. ";
  text += "Long again " + filler + ". ";
  const Document doc = ingest(text, "audit");
  const AuditReport report = audit_long_sentences(doc, 500);
  CHECK(report.total_sentences == doc.sentences.size());
  CHECK(report.long_count == 2);
  for (const auto& s : report.long_sentences) {
    CHECK(s.char_length > 500);
    CHECK(s.char_length == doc.sentences[s.index].char_length);
  }
  CHECK_THROWS_AS(audit_long_sentences(doc, 0), ParamError);
}

TEST_CASE("audit totals agree with the corpus sentence count") {
  const Document doc = synthetic_novel(90, 7);
  CHECK(audit_long_sentences(doc, 500).total_sentences ==
        doc.sentences.size());
}

TEST_CASE("format_number uses nine significant digits") {
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(0.123456789123) == "0.123456789");
  CHECK(format_number(-12345.6789123) == "-12345.6789");
  CHECK(round_to_9(0.123456789123) == 0.123456789);
}

TEST_CASE("svg renders one color-class group per sign stretch") {
  const std::string svg =
      render_arc_svg({simple_arc({1, 2, 1, -1, -2})}, {}, nullptr, {});
  CHECK(xml_balanced(svg));
  CHECK(count_occurrences(svg, "class=\"arc pos\"") == 1);
  CHECK(count_occurrences(svg, "class=\"arc neg\"") == 1);
  CHECK(count_occurrences(svg, "class=\"zero\"") == 1);

  const std::string twice =
      render_arc_svg({simple_arc({1, -1, 1, -1, 1})}, {}, nullptr, {});
  CHECK(count_occurrences(twice, "class=\"arc pos\"") == 3);
  CHECK(count_occurrences(twice, "class=\"arc neg\"") == 2);

  const std::string flat = render_arc_svg({simple_arc({1, 2, 3})}, {}, nullptr, {});
  CHECK(count_occurrences(flat, "class=\"arc pos\"") == 1);
  CHECK(count_occurrences(flat, "class=\"arc neg\"") == 0);
}

TEST_CASE("svg handles zero-valued points between signs") {
  const std::string svg =
      render_arc_svg({simple_arc({1, 0, -1})}, {}, nullptr, {});
  CHECK(count_occurrences(svg, "class=\"arc pos\"") == 1);
  CHECK(count_occurrences(svg, "class=\"arc neg\"") == 1);
}

TEST_CASE("svg output is byte-identical across calls") {
  const Arc arc = simple_arc({0.5, 1.5, -0.5, 2.5, -1.5});
  std::vector<InflectionPoint> points;
  InflectionPoint p;
  p.kind = ExtremumKind::maximum;
  p.position = 0.75;
  p.value = 2.5;
  p.label = "P1";
  points.push_back(p);
  const std::string a = render_arc_svg({arc}, points, nullptr, {});
  const std::string b = render_arc_svg({arc}, points, nullptr, {});
  CHECK(a == b);
  CHECK(a.find(">P1</text>") != std::string::npos);
}

TEST_CASE("svg includes one band polygon when a band is supplied") {
  NullBand band;
  band.n_trials = 10;
  band.grid = Eigen::VectorXd::LinSpaced(20, 0.0, 1.0);
  band.lower = Eigen::VectorXd::Constant(20, -0.5);
  band.upper = Eigen::VectorXd::Constant(20, 0.5);
  band.original = Eigen::VectorXd::LinSpaced(20, -1.0, 1.0);
  const std::string svg =
      render_arc_svg({simple_arc({-1, 1, -1, 1})}, {}, &band, {});
  CHECK(xml_balanced(svg));
  CHECK(count_occurrences(svg, "class=\"band\"") == 1);
}

TEST_CASE("svg rejects empty input") {
  CHECK_THROWS_AS(render_arc_svg({}, {}, nullptr, {}), ParamError);
}

TEST_CASE("series CSV round-trips") {
  std::vector<ScoredSentenceRow> rows = {
      {0, 0, 10, 3, 1.5, -0.74, -0.187652092},
      {1, 11, 25, 5, 0.0, 0.0, 0.0},
      {2, 26, 40, 2, -2.25, -3.128, -0.628288165},
  };
  const std::string csv = series_csv(rows);
  CHECK(csv.rfind("index,start_char,end_char,n_tokens,lexical,rules_raw,"
                  "rules_compound\n",
                  0) == 0);
  const auto back = parse_series_csv(csv);
  REQUIRE(back.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(back[i].index == rows[i].index);
    CHECK(back[i].n_tokens == rows[i].n_tokens);
    CHECK(back[i].lexical == round_to_9(rows[i].lexical));
    CHECK(back[i].rules_compound == round_to_9(rows[i].rules_compound));
  }
  CHECK_THROWS_AS(parse_series_csv("bad,header\n1,2\n"), ParamError);
  CHECK_THROWS_AS(
      parse_series_csv("index,start_char,end_char,n_tokens,lexical,"
                       "rules_raw,rules_compound\n1,2,3\n"),
      ParamError);
}

TEST_CASE("arc CSV round-trips and recovers the source length") {
  const Eigen::VectorXd series = man_in_hole_series(120, 3);
  const Arc arc = rolling_mean(series, 0.1);
  const Arc back = parse_arc_csv(arc_csv(arc));
  REQUIRE(back.positions.size() == arc.positions.size());
  CHECK(back.n_source == arc.n_source);
  CHECK(back.valid_start == round_to_9(arc.valid_start));
  for (Eigen::Index i = 0; i < arc.values.size(); ++i)
    CHECK(back.values[i] == round_to_9(arc.values[i]));
}

TEST_CASE("document JSON round-trips through nlohmann parsing") {
  const Document doc = ingest(
      "“Why not?” said Mrs. Bell. SO GOOD!!! :) The end--for now.",
      "roundtrip");
  const std::string json_text = document_to_json(doc);
  const Document back = document_from_json(json_text);
  CHECK(back.source_id == doc.source_id);
  CHECK(back.raw_length == doc.raw_length);
  CHECK(back.text == doc.text);
  REQUIRE(back.sentences.size() == doc.sentences.size());
  for (std::size_t i = 0; i < doc.sentences.size(); ++i) {
    CHECK(back.sentences[i].text == doc.sentences[i].text);
    CHECK(back.sentences[i].start_char == doc.sentences[i].start_char);
    REQUIRE(back.sentences[i].tokens.size() == doc.sentences[i].tokens.size());
    for (std::size_t t = 0; t < doc.sentences[i].tokens.size(); ++t) {
      CHECK(back.sentences[i].tokens[t].surface ==
            doc.sentences[i].tokens[t].surface);
      CHECK(back.sentences[i].tokens[t].trailing_exclaims ==
            doc.sentences[i].tokens[t].trailing_exclaims);
    }
  }
  CHECK_THROWS_AS(document_from_json("{not json"), ParamError);
  CHECK_THROWS_AS(document_from_json("{}"), ParamError);
}

TEST_CASE("rule config JSON overrides defaults and rejects unknown keys") {
  const RuleConfig config = rule_config_from_json(
      R"({"negation_multiplier": -0.5, "boosters": {"very": 0.4},
          "negation_words": ["not"], "exclaim_cap": 2})");
  CHECK(config.negation_multiplier == -0.5);
  CHECK(config.boosters.size() == 1);
  CHECK(config.boosters.at("very") == 0.4);
  CHECK(config.negation_words.size() == 1);
  CHECK(config.exclaim_cap == 2);
  CHECK(config.allcaps_boost == RuleConfig::defaults().allcaps_boost);
  CHECK_THROWS_AS(rule_config_from_json(R"({"negation_window": 0})"),
                  ParamError);
  CHECK_THROWS_AS(rule_config_from_json(R"({"mystery": 1})"), ParamError);
  CHECK_THROWS_AS(rule_config_from_json("not json"), ParamError);
}

TEST_CASE("run pipeline produces a self-consistent report") {
  const std::string scratch = make_sample_inputs("pipeline");
  const RunOptions options = sample_options(scratch);
  const RunReport report = run_pipeline(options);

  CHECK(report.doc.sentences.size() == 60);
  CHECK(report.rows.size() == 60);
  CHECK(report.lexicon_size == fixture_lexicon().size());
  REQUIRE(report.arcs.size() == 4);  // rolling, dct5, dct10, loess
  CHECK(report.arcs[0].smoother_id == SmootherId::rolling);
  CHECK(report.arcs[1].low_pass == 5);
  CHECK(report.arcs[2].low_pass == 10);
  CHECK(report.arcs[3].smoother_id == SmootherId::loess);
  CHECK(report.extrema.size() == report.contexts.size());
  CHECK(report.band.grid.size() == options.grid);
  CHECK(report.agreement.arc_ids[0] == "rolling_w10");
  CHECK(report.agreement.arc_ids[1] == "dct_lp10");

  // compound column follows the rules column through the documented map
  for (const auto& row : report.rows)
    CHECK(row.rules_compound ==
          normalize_compound(row.rules_raw, options.rules.compound_alpha));
  fs::remove_all(scratch);
}

TEST_CASE("export_run writes the full file set and re-export is identical") {
  const std::string scratch = make_sample_inputs("export");
  const RunOptions options = sample_options(scratch);
  const RunReport report = run_pipeline(options);

  const std::string out = scratch + "/out";
  export_run(report, out);
  for (const char* name :
       {"report.json", "series.csv", "band.csv", "plot.svg"})
    CHECK(fs::exists(fs::path(out) / name));
  CHECK(fs::exists(fs::path(out) / "arcs" / "rolling_w10.csv"));
  CHECK(fs::exists(fs::path(out) / "arcs" / "dct_lp5.csv"));
  CHECK(fs::exists(fs::path(out) / "arcs" / "dct_lp10.csv"));
  CHECK(fs::exists(fs::path(out) / "arcs" / "loess_s50.csv"));

  const std::string first = read_file(out + "/report.json");
  export_run(report, out);
  CHECK(read_file(out + "/report.json") == first);

  // every numeric field survives a parse at nine significant digits
  const nlohmann::json parsed = nlohmann::json::parse(first);
  const auto& arc0 = parsed.at("arcs").at(0);
  for (Eigen::Index i = 0; i < report.arcs[0].values.size(); ++i) {
    CHECK(arc0.at("values").at(static_cast<std::size_t>(i)).get<double>() ==
          round_to_9(report.arcs[0].values[i]));
  }
  CHECK(parsed.at("null_band").at("separation").get<double>() ==
        round_to_9(report.band.separation));
  CHECK(parsed.at("input").at("sentences").get<std::size_t>() == 60);
  CHECK(parsed.at("audit").at("total_sentences").get<std::size_t>() == 60);

  const Arc arc_back =
      parse_arc_csv(read_file(out + "/arcs/rolling_w10.csv"));
  CHECK(arc_back.n_source == 60);

  CHECK_THROWS_AS(export_run(report, "/proc/arclens_forbidden/out"), IoError);
  fs::remove_all(scratch);
}

TEST_CASE("run pipeline is deterministic end to end") {
  const std::string scratch = make_sample_inputs("determinism");
  const RunOptions options = sample_options(scratch);
  const std::string a = run_report_json(run_pipeline(options));
  const std::string b = run_report_json(run_pipeline(options));
  CHECK(a == b);
  fs::remove_all(scratch);
}

TEST_CASE("inflection JSON round-trips") {
  const Eigen::VectorXd series = man_in_hole_series(200, 13);
  const Arc arc = rolling_mean(series, 0.1);
  const auto points = find_extrema(arc, auto_prominence(arc));
  REQUIRE(!points.empty());
  const std::string json_text = inflection_json(points, {});
  const auto back = inflection_points_from_json(json_text);
  REQUIRE(back.size() == points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    CHECK(back[i].label == points[i].label);
    CHECK(back[i].kind == points[i].kind);
    CHECK(back[i].sentence_index == points[i].sentence_index);
    CHECK(back[i].position == round_to_9(points[i].position));
  }
}

TEST_CASE("golden bytes: series CSV") {
  const std::vector<ScoredSentenceRow> rows = {
      {0, 0, 9, 2, 1.75, -0.74, -0.187556128},
      {1, 10, 24, 4, 0.0, 0.5, 0.128036881},
  };
  CHECK(series_csv(rows) ==
        "index,start_char,end_char,n_tokens,lexical,rules_raw,rules_compound\n"
        "0,0,9,2,1.75,-0.74,-0.187556128\n"
        "1,10,24,4,0,0.5,0.128036881\n");
}

TEST_CASE("golden bytes: arc and band CSV") {
  Arc arc;
  arc.id = "g";
  arc.positions = Eigen::Vector3d(0.0, 0.5, 1.0);
  arc.values = Eigen::Vector3d(-1.0, 0.123456789123, 2.0);
  CHECK(arc_csv(arc) == "position,value\n"
                        "0,-1\n"
                        "0.5,0.123456789\n"
                        "1,2\n");

  NullBand band;
  band.grid = Eigen::Vector2d(0.0, 1.0);
  band.lower = Eigen::Vector2d(-0.25, -0.5);
  band.upper = Eigen::Vector2d(0.25, 0.5);
  band.original = Eigen::Vector2d(1.0, -1.0);
  CHECK(band_csv(band) == "position,lower,upper,original\n"
                          "0,-0.25,0.25,1\n"
                          "1,-0.5,0.5,-1\n");
}

TEST_CASE("golden bytes: inflection JSON") {
  InflectionPoint p;
  p.kind = ExtremumKind::maximum;
  p.position = 0.46;
  p.value = 0.34;
  p.sentence_index = 1603;
  p.label = "P1";
  p.is_global_max = true;
  CHECK(inflection_json({p}, {}) ==
        R"({"points":[{"label":"P1","kind":"max","position":0.46,)"
        R"("percent":46,"value":0.34,"sentence_index":1603,)"
        R"("is_global_max":true,"is_global_min":false}]})");
}

TEST_CASE("read_file and write_file surface path errors") {
  CHECK_THROWS_AS(read_file("/nonexistent/path.txt"), IoError);
  try {
    write_file("/proc/arclens_forbidden.txt", "x");
    FAIL("expected IoError");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find("/proc/arclens_forbidden.txt") !=
          std::string::npos);
  }
}
