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

#include "arclens/arcs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "arclens/errors.hpp"

namespace arclens {

namespace {

// Earliest index attaining the extreme value.
Eigen::Index argmax_of(const Eigen::VectorXd& v) {
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i)
    if (v[i] > v[best]) best = i;
  return best;
}

Eigen::Index argmin_of(const Eigen::VectorXd& v) {
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i)
    if (v[i] < v[best]) best = i;
  return best;
}

// Topographic prominence of a local maximum: drop to the higher of the two
// lowest contours reachable without climbing above the peak.
double prominence_of_max(const Eigen::VectorXd& v, Eigen::Index p) {
  double left = v[p];
  for (Eigen::Index i = p - 1; i >= 0 && v[i] <= v[p]; --i)
    left = std::min(left, v[i]);
  double right = v[p];
  for (Eigen::Index i = p + 1; i < v.size() && v[i] <= v[p]; ++i)
    right = std::min(right, v[i]);
  return v[p] - std::max(left, right);
}

double prominence_of_min(const Eigen::VectorXd& v, Eigen::Index p) {
  double left = v[p];
  for (Eigen::Index i = p - 1; i >= 0 && v[i] >= v[p]; --i)
    left = std::max(left, v[i]);
  double right = v[p];
  for (Eigen::Index i = p + 1; i < v.size() && v[i] >= v[p]; ++i)
    right = std::max(right, v[i]);
  return std::min(left, right) - v[p];
}

struct Candidate {
  Eigen::Index index;
  ExtremumKind kind;
};

bool more_extreme(const Candidate& a, const Candidate& b,
                  const Eigen::VectorXd& v) {
  return a.kind == ExtremumKind::maximum ? v[a.index] > v[b.index]
                                         : v[a.index] < v[b.index];
}

} // namespace

double auto_prominence(const Arc& arc) {
  return 0.05 * (arc.values.maxCoeff() - arc.values.minCoeff());
}

std::vector<InflectionPoint> find_extrema(const Arc& arc,
                                          double min_prominence) {
  if (min_prominence < 0) throw ParamError("min_prominence must be >= 0");
  const Eigen::VectorXd& v = arc.values;
  const Eigen::Index n = v.size();
  if (n < 3) throw ParamError("arc needs at least 3 points");

  const Eigen::Index global_max = argmax_of(v);
  const Eigen::Index global_min = argmin_of(v);

  // Plateau-aware candidates: runs of equal values count once, at their
  // midpoint.
  std::vector<Candidate> candidates;
  Eigen::Index run_start = 0;
  for (Eigen::Index i = 1; i <= n; ++i) {
    if (i < n && v[i] == v[run_start]) continue;
    const Eigen::Index run_end = i - 1;
    if (run_start > 0 && run_end < n - 1) {
      const double before = v[run_start - 1];
      const double after = v[run_end + 1];
      const Eigen::Index mid = (run_start + run_end) / 2;
      if (v[run_start] > before && v[run_start] > after)
        candidates.push_back({mid, ExtremumKind::maximum});
      else if (v[run_start] < before && v[run_start] < after)
        candidates.push_back({mid, ExtremumKind::minimum});
    }
    run_start = i;
  }

  // Prominence filter; the global extrema always survive so the flagged
  // global max/min stay consistent with argmax/argmin.
  std::vector<Candidate> filtered;
  for (const Candidate& c : candidates) {
    const bool is_global = (c.kind == ExtremumKind::maximum &&
                            v[c.index] == v[global_max]) ||
                           (c.kind == ExtremumKind::minimum &&
                            v[c.index] == v[global_min]);
    const double prom = c.kind == ExtremumKind::maximum
                            ? prominence_of_max(v, c.index)
                            : prominence_of_min(v, c.index);
    if (is_global || prom >= min_prominence) filtered.push_back(c);
  }

  // Same-kind neighbors collapse to the more extreme one (ties keep the
  // earlier) until kinds alternate.
  std::vector<Candidate> kept;
  for (const Candidate& c : filtered) {
    if (!kept.empty() && kept.back().kind == c.kind) {
      if (more_extreme(c, kept.back(), v)) kept.back() = c;
    } else {
      kept.push_back(c);
    }
  }

  std::vector<InflectionPoint> out;
  out.reserve(kept.size());
  bool max_flagged = false;
  bool min_flagged = false;
  for (std::size_t i = 0; i < kept.size(); ++i) {
    InflectionPoint p;
    p.kind = kept[i].kind;
    p.position = arc.positions[kept[i].index];
    p.value = v[kept[i].index];
    p.sentence_index = arc.n_source > 1
                           ? static_cast<Eigen::Index>(std::lround(
                                 p.position *
                                 static_cast<double>(arc.n_source - 1)))
                           : 0;
    p.label = "P" + std::to_string(i + 1);
    // Earliest retained extremum attaining the global value carries the flag.
    if (!max_flagged && p.kind == ExtremumKind::maximum &&
        p.value == v[global_max]) {
      p.is_global_max = true;
      max_flagged = true;
    }
    if (!min_flagged && p.kind == ExtremumKind::minimum &&
        p.value == v[global_min]) {
      p.is_global_min = true;
      min_flagged = true;
    }
    out.push_back(std::move(p));
  }
  return out;
}

ContextWindow extract_context(const Document& doc, const InflectionPoint& point,
                              int k) {
  if (k < 0) throw ParamError("context size must be >= 0");
  const auto n = static_cast<Eigen::Index>(doc.sentences.size());
  const Eigen::Index center = point.sentence_index;
  if (center < 0 || center >= n)
    throw ParamError("sentence index out of range");

  ContextWindow window;
  window.center_sentence = center;
  const Eigen::Index from = std::max<Eigen::Index>(0, center - k);
  for (Eigen::Index i = from; i < center; ++i)
    window.before.push_back(doc.sentences[static_cast<std::size_t>(i)].text);
  const Eigen::Index to = std::min(n, center + k + 1);
  for (Eigen::Index i = center + 1; i < to; ++i)
    window.after.push_back(doc.sentences[static_cast<std::size_t>(i)].text);
  return window;
}

double interpolate_arc(const Arc& arc, double x) {
  const auto& p = arc.positions;
  const auto& v = arc.values;
  const Eigen::Index n = p.size();
  if (x <= p[0]) return v[0];
  if (x >= p[n - 1]) return v[n - 1];
  Eigen::Index lo = 0;
  Eigen::Index hi = n - 1;
  while (hi - lo > 1) {
    const Eigen::Index mid = (lo + hi) / 2;
    (p[mid] <= x ? lo : hi) = mid;
  }
  const double t = (x - p[lo]) / (p[hi] - p[lo]);
  return v[lo] + t * (v[hi] - v[lo]);
}

namespace {

Eigen::VectorXd resample(const Arc& arc, const Eigen::VectorXd& grid) {
  Eigen::VectorXd out(grid.size());
  for (Eigen::Index i = 0; i < grid.size(); ++i)
    out[i] = interpolate_arc(arc, grid[i]);
  return out;
}

Eigen::VectorXd make_grid(double lo, double hi, int m) {
  Eigen::VectorXd grid(m);
  for (int i = 0; i < m; ++i)
    grid[i] = lo + (hi - lo) * static_cast<double>(i) /
                       static_cast<double>(m - 1);
  return grid;
}

} // namespace

AgreementReport compare_arcs(const Arc& a, const Arc& b, int grid_size,
                             double pos_tolerance) {
  if (grid_size < 2) throw ParamError("grid_size must be >= 2");
  const double lo = std::max(a.valid_start, b.valid_start);
  const double hi = std::min(a.valid_end, b.valid_end);
  if (!(lo < hi)) throw ParamError("arc valid regions do not overlap");

  const Eigen::VectorXd grid = make_grid(lo, hi, grid_size);
  const Eigen::VectorXd ra = resample(a, grid);
  const Eigen::VectorXd rb = resample(b, grid);

  AgreementReport report;
  report.arc_ids = {a.id, b.id};

  const Eigen::VectorXd ca = ra.array() - ra.mean();
  const Eigen::VectorXd cb = rb.array() - rb.mean();
  const double saa = ca.dot(ca);
  const double sbb = cb.dot(cb);
  if (saa > 0 && sbb > 0)
    report.pearson_r = ca.dot(cb) / std::sqrt(saa * sbb);

  const auto ex_a = find_extrema(a, auto_prominence(a));
  auto ex_b = find_extrema(b, auto_prominence(b));
  std::vector<bool> used(ex_b.size(), false);
  for (const auto& ea : ex_a) {
    int best = -1;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < ex_b.size(); ++j) {
      if (used[j] || ex_b[j].kind != ea.kind) continue;
      const double dist = std::abs(ex_b[j].position - ea.position);
      if (dist <= pos_tolerance && dist < best_dist) {
        best_dist = dist;
        best = static_cast<int>(j);
      }
    }
    if (best >= 0) {
      used[static_cast<std::size_t>(best)] = true;
      ++report.extrema_matches;
    }
  }
  return report;
}

namespace {

// Unbiased draw in [0, bound) so shuffles are identical on every platform.
std::uint64_t bounded_draw(std::mt19937_64& gen, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = gen();
    if (r >= threshold) return r % bound;
  }
}

} // namespace

Document word_salad(const Document& doc, std::uint64_t seed) {
  std::vector<Token> pool;
  pool.reserve(doc.token_count());
  for (const auto& s : doc.sentences)
    pool.insert(pool.end(), s.tokens.begin(), s.tokens.end());
  if (pool.size() < 2) throw ParamError("document has fewer than 2 tokens");

  std::mt19937_64 gen(seed);
  for (std::size_t i = pool.size() - 1; i > 0; --i) {
    const auto j =
        static_cast<std::size_t>(bounded_draw(gen, static_cast<std::uint64_t>(i) + 1));
    std::swap(pool[i], pool[j]);
  }

  Document salad;
  salad.source_id = doc.source_id + "[salad:" + std::to_string(seed) + "]";

  std::size_t next = 0;
  for (const auto& original : doc.sentences) {
    SentenceRecord rec;
    rec.index = original.index;
    rec.tokens.assign(pool.begin() + static_cast<std::ptrdiff_t>(next),
                      pool.begin() + static_cast<std::ptrdiff_t>(
                                         next + original.tokens.size()));
    next += original.tokens.size();

    std::string text;
    for (std::size_t t = 0; t < rec.tokens.size(); ++t) {
      if (t > 0) text += ' ';
      text += rec.tokens[t].surface;
    }
    if (text.empty()) text = ".";  // token-free sentences keep one character

    rec.start_char = salad.text.size();
    salad.text += text;
    rec.end_char = salad.text.size();
    rec.char_length = rec.end_char - rec.start_char;
    rec.text = std::move(text);
    salad.text += '\n';
    salad.sentences.push_back(std::move(rec));
  }
  if (!salad.text.empty()) salad.text.pop_back();
  salad.raw_length = count_codepoints(salad.text);
  return salad;
}

NullBand null_band(const Document& doc, const Lexicon& lexicon,
                   EngineId engine_id, const RuleConfig& rule_config,
                   const SmootherSpec& smoother, int n_trials,
                   std::uint64_t base_seed, int grid_size) {
  if (n_trials < 2) throw ParamError("n_trials must be >= 2");
  if (grid_size < 2) throw ParamError("grid_size must be >= 2");

  const SentimentSeries series =
      score_document(doc, lexicon, engine_id, rule_config);
  const Arc original_arc = smoother.apply(series.values);

  NullBand band;
  band.n_trials = n_trials;
  band.base_seed = base_seed;
  band.grid = make_grid(original_arc.valid_start, original_arc.valid_end,
                        grid_size);
  band.original = resample(original_arc, band.grid);
  band.lower.resize(grid_size);
  band.upper.resize(grid_size);

  for (int trial = 0; trial < n_trials; ++trial) {
    const Document salad =
        word_salad(doc, base_seed + static_cast<std::uint64_t>(trial));
    const SentimentSeries salad_series =
        score_document(salad, lexicon, engine_id, rule_config);
    const Arc salad_arc = smoother.apply(salad_series.values);
    const Eigen::VectorXd trial_values = resample(salad_arc, band.grid);
    if (trial == 0) {
      band.lower = trial_values;
      band.upper = trial_values;
    } else {
      band.lower = band.lower.cwiseMin(trial_values);
      band.upper = band.upper.cwiseMax(trial_values);
    }
  }

  int outside = 0;
  for (Eigen::Index i = 0; i < band.grid.size(); ++i) {
    if (band.original[i] < band.lower[i] || band.original[i] > band.upper[i])
      ++outside;
  }
  band.separation = static_cast<double>(outside) /
                    static_cast<double>(band.grid.size());
  return band;
}

DistributionStats distribution_stats(const Eigen::VectorXd& series) {
  const Eigen::Index n = series.size();
  if (n < 2) throw ParamError("series needs at least 2 values");

  DistributionStats stats;
  stats.mean = series.mean();
  const Eigen::ArrayXd centered = series.array() - stats.mean;
  const double m2 = centered.square().sum() / static_cast<double>(n);
  const double m3 = centered.cube().sum() / static_cast<double>(n);
  stats.variance = centered.square().sum() / static_cast<double>(n - 1);
  if (m2 > 0) stats.skewness = m3 / std::pow(m2, 1.5);
  return stats;
}

} // namespace arclens
