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

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "arclens/arcs.hpp"
#include "arclens/corpus.hpp"
#include "arclens/engines.hpp"
#include "arclens/errors.hpp"
#include "arclens/lexicon.hpp"
#include "arclens/report.hpp"
#include "arclens/smoothing.hpp"

namespace {

using namespace arclens;

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty() || out_path == "-") {
    std::fwrite(content.data(), 1, content.size(), stdout);
  } else {
    write_file(out_path, content);
  }
}

Document load_document(const std::string& text_path, int strip_lines,
                       const std::string& source_id,
                       const std::string& abbrev_path) {
  const std::string raw = read_file(text_path);
  IngestOptions options;
  options.strip_lines = strip_lines;
  std::set<std::string> abbreviations;
  if (!abbrev_path.empty()) {
    abbreviations = load_abbreviations(abbrev_path);
    options.abbreviations = &abbreviations;
  }
  const std::string sid =
      source_id.empty()
          ? std::filesystem::path(text_path).filename().string()
          : source_id;
  return ingest(raw, sid, options);
}

RuleConfig load_rules(const std::string& rule_config_path) {
  if (rule_config_path.empty()) return RuleConfig::defaults();
  return rule_config_from_json(read_file(rule_config_path));
}

std::vector<ScoredSentenceRow> score_rows(const Document& doc,
                                          const Lexicon& lexicon,
                                          const RuleConfig& rules) {
  const SentimentSeries lexical = score_document(doc, lexicon, EngineId::lexical);
  const SentimentSeries rule_series =
      score_document(doc, lexicon, EngineId::rules, rules);
  std::vector<ScoredSentenceRow> rows;
  rows.reserve(doc.sentences.size());
  for (std::size_t i = 0; i < doc.sentences.size(); ++i) {
    const auto& s = doc.sentences[i];
    const auto e = static_cast<Eigen::Index>(i);
    rows.push_back({s.index, s.start_char, s.end_char, s.tokens.size(),
                    lexical.values[e], rule_series.values[e],
                    normalize_compound(rule_series.values[e],
                                       rules.compound_alpha)});
  }
  return rows;
}

Eigen::VectorXd column_of(const std::vector<ScoredSentenceRow>& rows,
                          const std::string& column) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto e = static_cast<Eigen::Index>(i);
    if (column == "lexical") {
      v[e] = rows[i].lexical;
    } else if (column == "rules_raw") {
      v[e] = rows[i].rules_raw;
    } else if (column == "rules_compound") {
      v[e] = rows[i].rules_compound;
    } else {
      throw ParamError("unknown column '" + column +
                       "' (expected lexical|rules_raw|rules_compound)");
    }
  }
  return v;
}

int dispatch(CLI::App& app, int argc, char** argv) {
  try {
    app.parse(argc, argv);
    return 0;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ParamError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"lexical sentiment arcs for narrative text"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  // Shared inputs.
  std::string text_path, out_path, source_id, abbrev_path, lexicon_path;
  std::string rule_config_path, engine = "lexical";
  int strip_lines = 0;

  const auto add_text_opts = [&](CLI::App* cmd, bool need_lexicon) {
    cmd->add_option("--text", text_path, "UTF-8 plaintext input")
        ->required();
    cmd->add_option("--strip-lines", strip_lines,
                    "drop this many leading lines (boilerplate)");
    cmd->add_option("--source-id", source_id, "label for the document");
    cmd->add_option("--abbrev", abbrev_path,
                    "abbreviation list file (default: built-in)");
    if (need_lexicon) {
      cmd->add_option("--lexicon", lexicon_path, "word<TAB>score lexicon file")
          ->required();
      cmd->add_option("--engine", engine, "lexical|rules")
          ->check(CLI::IsMember({"lexical", "rules"}));
      cmd->add_option("--rule-config", rule_config_path,
                      "JSON overrides for the rule engine");
    }
  };

  // --- ingest ---------------------------------------------------------------
  auto* cmd_ingest =
      app.add_subcommand("ingest", "normalize and segment a text");
  add_text_opts(cmd_ingest, false);
  cmd_ingest->add_option("--out", out_path, "output path (default stdout)");
  cmd_ingest->callback([&] {
    const Document doc =
        load_document(text_path, strip_lines, source_id, abbrev_path);
    emit(out_path, document_to_json(doc));
  });

  // --- score ----------------------------------------------------------------
  auto* cmd_score =
      app.add_subcommand("score", "per-sentence sentiment scores as CSV");
  add_text_opts(cmd_score, true);
  cmd_score->add_option("--out", out_path, "output path (default stdout)");
  cmd_score->callback([&] {
    const Document doc =
        load_document(text_path, strip_lines, source_id, abbrev_path);
    if (doc.sentences.empty()) throw ParamError("no sentences");
    const Lexicon lexicon = load_lexicon(
        lexicon_path, std::filesystem::path(lexicon_path).filename().string());
    (void)engine_from_name(engine);
    emit(out_path, series_csv(score_rows(doc, lexicon,
                                         load_rules(rule_config_path))));
  });

  // --- smooth ---------------------------------------------------------------
  auto* cmd_smooth =
      app.add_subcommand("smooth", "smooth a series CSV into an arc CSV");
  std::string series_path, column = "lexical", method = "rolling";
  double window_pct = 0.10, span = 0.5;
  int low_pass = 5, degree = 1;
  bool no_scale_range = false;
  cmd_smooth->add_option("--series", series_path, "series CSV from `score`")
      ->required();
  cmd_smooth->add_option("--column", column,
                         "lexical|rules_raw|rules_compound");
  cmd_smooth->add_option("--method", method, "rolling|dct|loess")->required();
  cmd_smooth->add_option("--window-pct", window_pct,
                         "rolling window as a fraction of the series");
  cmd_smooth->add_option("--low-pass", low_pass, "DCT components kept");
  cmd_smooth->add_option("--span", span, "LOESS neighborhood fraction");
  cmd_smooth->add_option("--degree", degree, "LOESS polynomial degree (0-2)");
  cmd_smooth->add_flag("--no-scale-range", no_scale_range,
                       "keep the DCT output unscaled");
  cmd_smooth->add_option("--out", out_path, "output path (default stdout)");
  cmd_smooth->callback([&] {
    const auto rows = parse_series_csv(read_file(series_path));
    SmootherSpec spec;
    spec.method = smoother_from_name(method);
    spec.window_pct = window_pct;
    spec.low_pass = low_pass;
    spec.scale_range = !no_scale_range;
    spec.span = span;
    spec.degree = degree;
    emit(out_path, arc_csv(spec.apply(column_of(rows, column))));
  });

  // --- arc ------------------------------------------------------------------
  auto* cmd_arc =
      app.add_subcommand("arc", "inflection points of an arc CSV");
  std::string arc_path, doc_path;
  double min_prominence = -1;
  int context_k = 10;
  cmd_arc->add_option("--arc", arc_path, "arc CSV from `smooth`")->required();
  cmd_arc->add_option("--doc", doc_path,
                      "document JSON from `ingest` (adds context sentences)");
  cmd_arc->add_option("--min-prominence", min_prominence,
                      "absolute prominence filter (default 5% of arc range)");
  cmd_arc->add_option("--context", context_k, "sentences on each side");
  cmd_arc->add_option("--out", out_path, "output path (default stdout)");
  cmd_arc->callback([&] {
    const Arc arc = parse_arc_csv(read_file(arc_path));
    const double prominence =
        min_prominence < 0 ? auto_prominence(arc) : min_prominence;
    const auto points = find_extrema(arc, prominence);
    std::vector<ContextWindow> contexts;
    if (!doc_path.empty()) {
      const Document doc = document_from_json(read_file(doc_path));
      for (const auto& p : points)
        contexts.push_back(extract_context(doc, p, context_k));
    }
    emit(out_path, inflection_json(points, contexts));
  });

  // --- nullmodel --------------------------------------------------------
  auto* cmd_null =
      app.add_subcommand("nullmodel", "word-salad envelope as band CSV");
  add_text_opts(cmd_null, true);
  std::string null_method = "rolling";
  double null_window = 0.10, null_span = 0.5;
  int null_low_pass = 5, trials = 10, grid = 100;
  std::uint64_t seed = 42;
  cmd_null->add_option("--method", null_method, "rolling|dct|loess");
  cmd_null->add_option("--window-pct", null_window, "rolling window fraction");
  cmd_null->add_option("--low-pass", null_low_pass, "DCT components kept");
  cmd_null->add_option("--span", null_span, "LOESS neighborhood fraction");
  cmd_null->add_option("--trials", trials, "number of word salads");
  cmd_null->add_option("--seed", seed, "base seed; trial i uses seed+i");
  cmd_null->add_option("--grid", grid, "resampling grid points");
  cmd_null->add_option("--out", out_path, "output path (default stdout)");
  cmd_null->callback([&] {
    const Document doc =
        load_document(text_path, strip_lines, source_id, abbrev_path);
    if (doc.sentences.empty()) throw ParamError("no sentences");
    const Lexicon lexicon = load_lexicon(
        lexicon_path, std::filesystem::path(lexicon_path).filename().string());
    SmootherSpec spec;
    spec.method = smoother_from_name(null_method);
    spec.window_pct = null_window;
    spec.low_pass = null_low_pass;
    spec.scale_range = false;
    spec.span = null_span;
    const NullBand band =
        null_band(doc, lexicon, engine_from_name(engine),
                  load_rules(rule_config_path), spec, trials, seed, grid);
    std::cerr << "separation=" << format_number(band.separation) << "\n";
    emit(out_path, band_csv(band));
  });

  // --- audit ------------------------------------------------------------
  auto* cmd_audit =
      app.add_subcommand("audit", "long sentences for manual split review");
  add_text_opts(cmd_audit, false);
  int threshold = 500;
  cmd_audit->add_option("--threshold", threshold, "character threshold");
  cmd_audit->add_option("--out", out_path, "output path (default stdout)");
  cmd_audit->callback([&] {
    const Document doc =
        load_document(text_path, strip_lines, source_id, abbrev_path);
    emit(out_path, audit_json(audit_long_sentences(doc, threshold)));
  });

  // --- plot -------------------------------------------------------------
  auto* cmd_plot = app.add_subcommand("plot", "render arcs as a standalone SVG");
  std::vector<std::string> arc_paths;
  std::string points_path, band_path, title;
  std::string plot_series_path, plot_column = "lexical";
  PlotOptions plot_options;
  cmd_plot->add_option("--arc", arc_paths, "arc CSV (repeatable)");
  cmd_plot->add_option("--series", plot_series_path,
                       "series CSV; draws the unsmoothed per-sentence values");
  cmd_plot->add_option("--column", plot_column,
                       "column of --series to draw");
  cmd_plot->add_option("--points", points_path, "inflection JSON from `arc`");
  cmd_plot->add_option("--band", band_path, "band CSV from `nullmodel`");
  cmd_plot->add_option("--pos-color", plot_options.positive_color,
                       "color class for values above zero");
  cmd_plot->add_option("--neg-color", plot_options.negative_color,
                       "color class for values below zero");
  cmd_plot->add_option("--title", title, "plot title");
  cmd_plot->add_option("--width", plot_options.width, "SVG width");
  cmd_plot->add_option("--height", plot_options.height, "SVG height");
  cmd_plot->add_option("--out", out_path, "output SVG path")->required();
  cmd_plot->callback([&] {
    std::vector<Arc> arcs;
    if (!plot_series_path.empty()) {
      const auto rows = parse_series_csv(read_file(plot_series_path));
      if (rows.size() < 2) throw ParamError("series too short to plot");
      Arc raw;
      raw.id = "raw_" + plot_column;
      raw.values = column_of(rows, plot_column);
      raw.n_source = raw.values.size();
      raw.positions.resize(raw.n_source);
      for (Eigen::Index i = 0; i < raw.n_source; ++i)
        raw.positions[i] = static_cast<double>(i) /
                           static_cast<double>(raw.n_source - 1);
      arcs.push_back(std::move(raw));
    }
    for (std::size_t i = 0; i < arc_paths.size(); ++i) {
      Arc arc = parse_arc_csv(read_file(arc_paths[i]));
      arc.id = std::filesystem::path(arc_paths[i]).stem().string();
      arcs.push_back(std::move(arc));
    }
    if (arcs.empty()) throw ParamError("nothing to plot: give --arc or --series");
    std::vector<InflectionPoint> points;
    if (!points_path.empty())
      points = inflection_points_from_json(read_file(points_path));
    NullBand band;
    bool have_band = false;
    if (!band_path.empty()) {
      band = parse_band_csv(read_file(band_path));
      have_band = true;
    }
    plot_options.title = title;
    emit(out_path, render_arc_svg(arcs, points, have_band ? &band : nullptr,
                                  plot_options));
  });

  // --- run --------------------------------------------------------------
  auto* cmd_run = app.add_subcommand("run", "full pipeline into a run report");
  add_text_opts(cmd_run, true);
  RunOptions run_options;
  std::string out_dir;
  std::vector<int> low_pass_values;
  cmd_run->add_option("--window-pct", run_options.window_pct,
                      "rolling window fraction");
  cmd_run->add_option("--low-pass", low_pass_values,
                      "DCT cuts to plot (default 5 10)");
  cmd_run->add_option("--span", run_options.span, "LOESS neighborhood fraction");
  cmd_run->add_option("--degree", run_options.degree, "LOESS degree");
  bool run_no_scale = false;
  cmd_run->add_flag("--no-scale-range", run_no_scale,
                    "keep DCT arcs unscaled");
  cmd_run->add_option("--trials", run_options.trials, "null-model salads");
  cmd_run->add_option("--seed", run_options.seed, "null-model base seed");
  cmd_run->add_option("--grid", run_options.grid, "resampling grid points");
  cmd_run->add_option("--threshold", run_options.audit_threshold,
                      "audit character threshold");
  cmd_run->add_option("--min-prominence", run_options.min_prominence,
                      "absolute prominence filter (default 5% of arc range)");
  cmd_run->add_option("--context", run_options.context_k,
                      "context sentences per crux");
  cmd_run->add_option("--timestamp", run_options.timestamp,
                      "recorded verbatim; leave unset for reproducible output");
  cmd_run->add_option("--title", run_options.plot.title, "plot title");
  cmd_run->add_option("--out-dir", out_dir, "output directory")->required();
  cmd_run->callback([&] {
    run_options.text_path = text_path;
    run_options.source_id = source_id;
    run_options.strip_lines = strip_lines;
    run_options.lexicon_path = lexicon_path;
    run_options.engine = engine_from_name(engine);
    run_options.rules = load_rules(rule_config_path);
    if (!low_pass_values.empty()) run_options.low_pass = low_pass_values;
    run_options.scale_range = !run_no_scale;
    const RunReport report = run_pipeline(run_options);
    export_run(report, out_dir);
    std::cout << "sentences=" << report.doc.sentences.size()
              << " tokens=" << report.doc.token_count()
              << " lexicon=" << report.lexicon_size
              << " separation=" << format_number(report.band.separation)
              << "\n";
    if (report.agreement.pearson_r.has_value())
      std::cout << "agreement " << report.agreement.arc_ids[0] << " vs "
                << report.agreement.arc_ids[1]
                << ": r=" << format_number(*report.agreement.pearson_r)
                << " matched_extrema=" << report.agreement.extrema_matches
                << "\n";
    std::cout << "wrote " << out_dir << "/report.json\n";
  });

  return dispatch(app, argc, argv);
}
