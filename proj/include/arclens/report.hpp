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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "arclens/arcs.hpp"
#include "arclens/corpus.hpp"
#include "arclens/engines.hpp"
#include "arclens/lexicon.hpp"
#include "arclens/smoothing.hpp"

namespace arclens {

inline constexpr const char* kToolName = "arclens";
inline constexpr const char* kToolVersion = "0.1.0";

// Candidate list for the manual splitting-error review.
struct AuditReport {
  std::size_t total_sentences = 0;
  int threshold_chars = 500;
  struct LongSentence {
    std::size_t index;
    std::size_t char_length;
    std::string text;
  };
  std::vector<LongSentence> long_sentences;
  std::size_t long_count = 0;
  std::string upper_bound_error_note;
};

AuditReport audit_long_sentences(const Document& doc, int threshold = 500);

struct PlotOptions {
  int width = 1000;
  int height = 420;
  int margin = 50;
  std::string positive_color = "#c0392b";  // rises
  std::string negative_color = "#2e6da4";  // dips
  std::string title;
};

// Standalone SVG: x axis in narrative percent, y in valence, arc segments
// above the zero line in the positive color class and below in the negative
// one, extrema annotated with their P labels, optional translucent null
// band. Byte-deterministic for fixed inputs. ParamError when arcs is empty.
std::string render_arc_svg(const std::vector<Arc>& arcs,
                           const std::vector<InflectionPoint>& extrema,
                           const NullBand* band = nullptr,
                           const PlotOptions& options = {});

// --- deterministic serialization -----------------------------------------
// Numeric payloads are written with 9 significant digits; parsing an export
// back reproduces every numeric field at that precision exactly.

std::string format_number(double value);   // %.9g, "-0" normalized
double round_to_9(double value);           // value after a 9-digit round trip

std::string document_to_json(const Document& doc);
Document document_from_json(const std::string& json_text);

// index,start_char,end_char,n_tokens,lexical,rules_raw,rules_compound
struct ScoredSentenceRow {
  std::size_t index;
  std::size_t start_char;
  std::size_t end_char;
  std::size_t n_tokens;
  double lexical;
  double rules_raw;
  double rules_compound;
};
std::string series_csv(const std::vector<ScoredSentenceRow>& rows);
std::vector<ScoredSentenceRow> parse_series_csv(const std::string& text);

std::string arc_csv(const Arc& arc);                 // position,value
Arc parse_arc_csv(const std::string& text);          // n_source from spacing
std::string band_csv(const NullBand& band);  // position,lower,upper,original
NullBand parse_band_csv(const std::string& text);

std::string inflection_json(const std::vector<InflectionPoint>& points,
                            const std::vector<ContextWindow>& contexts);
std::vector<InflectionPoint> inflection_points_from_json(
    const std::string& json_text);

std::string audit_json(const AuditReport& report);

// Partial overrides on top of RuleConfig::defaults(); unknown keys rejected.
RuleConfig rule_config_from_json(const std::string& json_text);

std::uint64_t fnv1a64(std::string_view bytes);

// --- full pipeline ---------------------------------------------------------

struct RunOptions {
  std::string text_path;
  std::string source_id;  // defaults to the file name
  int strip_lines = 0;
  std::string lexicon_path;
  EngineId engine = EngineId::lexical;  // series the arcs are built from
  RuleConfig rules = RuleConfig::defaults();
  double window_pct = 0.10;
  std::vector<int> low_pass = {5, 10};
  double span = 0.5;
  int degree = 1;
  bool scale_range = true;
  int trials = 10;
  std::uint64_t seed = 42;
  int grid = 100;
  int audit_threshold = 500;
  double min_prominence = -1;  // < 0 selects 0.05 * arc range
  int context_k = 10;
  std::string timestamp;  // stays empty unless supplied; keeps runs identical
  PlotOptions plot;
};

struct RunReport {
  RunOptions options;
  Document doc;
  std::string input_digest;  // fnv1a64 of the raw bytes, hex
  std::string lexicon_name;
  std::size_t lexicon_size = 0;
  std::vector<ScoredSentenceRow> rows;
  DistributionStats stats_lexical;
  DistributionStats stats_rules;
  std::vector<Arc> arcs;  // primary arc first
  std::vector<InflectionPoint> extrema;      // of the primary (rolling) arc
  std::vector<ContextWindow> contexts;       // parallel to extrema
  std::vector<InflectionPoint> dct_extrema;  // of the macro-shape arc
  AgreementReport agreement;  // rolling vs dct high-detail
  NullBand band;
  AuditReport audit;
};

RunReport run_pipeline(const RunOptions& options);

std::string run_report_json(const RunReport& report);

// Writes report.json, series.csv, arcs/<id>.csv, band.csv and plot.svg under
// out_dir. IoError with the path on any write failure.
void export_run(const RunReport& report, const std::string& out_dir);

// Whole-file helpers used across the CLI and tests.
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

} // namespace arclens
