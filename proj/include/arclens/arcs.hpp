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
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "arclens/corpus.hpp"
#include "arclens/engines.hpp"
#include "arclens/smoothing.hpp"

namespace arclens {

enum class ExtremumKind { maximum, minimum };

// A crux of a smoothed arc: a retained interior local extremum, labeled in
// position order.
struct InflectionPoint {
  ExtremumKind kind = ExtremumKind::maximum;
  double position = 0;  // narrative fraction
  double value = 0;
  Eigen::Index sentence_index = 0;  // nearest sentence ordinal
  std::string label;                // "P1", "P2", ...
  bool is_global_max = false;
  bool is_global_min = false;
};

// Sentences around a crux for close reading; truncated at document edges.
struct ContextWindow {
  Eigen::Index center_sentence = 0;
  std::vector<std::string> before;
  std::vector<std::string> after;
};

// Pointwise envelope over word-salad trial arcs. separation is the fraction
// of grid points where the original arc escapes [lower, upper].
struct NullBand {
  int n_trials = 0;
  std::uint64_t base_seed = 0;
  Eigen::VectorXd grid;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
  Eigen::VectorXd original;
  double separation = 0;
};

struct AgreementReport {
  std::array<std::string, 2> arc_ids;
  std::optional<double> pearson_r;  // empty when either arc is constant
  int extrema_matches = 0;
};

struct DistributionStats {
  double mean = 0;
  double variance = 0;                // sample variance, n-1 denominator
  std::optional<double> skewness;     // empty when variance is 0
};

// 0.05 of the arc's value range, the default crux filter.
double auto_prominence(const Arc& arc);

// Interior local extrema by strict neighbor comparison; plateaus take their
// midpoint. Extrema under min_prominence are dropped (the global max/min are
// always kept), same-kind neighbors collapse to the more extreme one so
// kinds alternate, and survivors are labeled P1, P2, ... in position order.
std::vector<InflectionPoint> find_extrema(const Arc& arc,
                                          double min_prominence);

// Up to k sentences on each side of the crux. Default k = 10.
ContextWindow extract_context(const Document& doc, const InflectionPoint& point,
                              int k = 10);

// Resamples both arcs onto grid_size evenly spaced positions over the
// intersection of their valid regions, reports Pearson correlation, and
// greedily matches same-kind extrema within pos_tolerance of each other.
// ParamError when the valid regions do not overlap.
AgreementReport compare_arcs(const Arc& a, const Arc& b, int grid_size = 100,
                             double pos_tolerance = 0.05);

// Tokens of the whole document permuted uniformly at random (seeded Fisher-
// Yates) and redistributed into pseudo-sentences with the original
// per-sentence token counts. Token multiset, sentence count and document
// total lexical score are preserved exactly.
Document word_salad(const Document& doc, std::uint64_t seed);

// Scores and smooths n_trials salads (seeds base_seed + trial) exactly like
// the original and takes the pointwise min/max envelope on an M-point grid.
NullBand null_band(const Document& doc, const Lexicon& lexicon,
                   EngineId engine_id, const RuleConfig& rule_config,
                   const SmootherSpec& smoother, int n_trials,
                   std::uint64_t base_seed, int grid_size = 100);

// Mean, sample variance and sample skewness g1 = m3 / m2^(3/2) with central
// moments over n. ParamError when the series has fewer than 2 values.
DistributionStats distribution_stats(const Eigen::VectorXd& series);

// Linear interpolation of (positions, values) at x, clamped to the ends.
double interpolate_arc(const Arc& arc, double x);

} // namespace arclens
