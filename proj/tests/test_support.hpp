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
#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "arclens/corpus.hpp"
#include "arclens/lexicon.hpp"

namespace testsupport {

// Classic man-in-hole shape: fair start, deep middle, better end.
inline double man_in_hole(double t) {
  struct Knot {
    double t, v;
  };
  static constexpr Knot knots[] = {{0.0, 0.6},  {0.15, 0.6}, {0.45, -1.0},
                                   {0.60, -1.0}, {0.85, 0.8}, {1.0, 0.8}};
  for (std::size_t i = 1; i < std::size(knots); ++i) {
    if (t <= knots[i].t) {
      const double f = (t - knots[i - 1].t) / (knots[i].t - knots[i - 1].t);
      return knots[i - 1].v + f * (knots[i].v - knots[i - 1].v);
    }
  }
  return knots[std::size(knots) - 1].v;
}

inline double uniform(std::mt19937_64& gen, double lo, double hi) {
  const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
  return lo + u * (hi - lo);
}

inline Eigen::VectorXd random_series(std::mt19937_64& gen, Eigen::Index n,
                                     double lo = -3.0, double hi = 3.0) {
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = uniform(gen, lo, hi);
  return v;
}

inline Eigen::VectorXd man_in_hole_series(Eigen::Index n, std::uint64_t seed,
                                          double noise_amp = 0.35) {
  std::mt19937_64 gen(seed);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(n - 1);
    v[i] = man_in_hole(t) + noise_amp * uniform(gen, -1.0, 1.0);
  }
  return v;
}

// --- independent oracles (plain loops, no Eigen expressions) --------------

// Textbook orthonormal DCT-II low-pass by direct summation.
inline std::vector<double> dct_lowpass_oracle(const std::vector<double>& x,
                                              int low_pass) {
  const std::size_t n = x.size();
  std::vector<double> coeff(static_cast<std::size_t>(low_pass), 0.0);
  for (int k = 0; k < low_pass; ++k) {
    double sum = 0;
    for (std::size_t i = 0; i < n; ++i)
      sum += x[i] * std::cos(std::numbers::pi *
                             (2.0 * static_cast<double>(i) + 1.0) *
                             static_cast<double>(k) /
                             (2.0 * static_cast<double>(n)));
    const double scale = k == 0 ? std::sqrt(1.0 / static_cast<double>(n))
                                : std::sqrt(2.0 / static_cast<double>(n));
    coeff[static_cast<std::size_t>(k)] = scale * sum;
  }
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0;
    for (int k = 0; k < low_pass; ++k) {
      const double scale = k == 0 ? std::sqrt(1.0 / static_cast<double>(n))
                                  : std::sqrt(2.0 / static_cast<double>(n));
      sum += scale * coeff[static_cast<std::size_t>(k)] *
             std::cos(std::numbers::pi *
                      (2.0 * static_cast<double>(i) + 1.0) *
                      static_cast<double>(k) / (2.0 * static_cast<double>(n)));
    }
    out[i] = sum;
  }
  return out;
}

// Windowed mean by direct summation over values[i-floor(w/2), i+ceil(w/2)).
inline std::vector<double> rolling_oracle(const std::vector<double>& x,
                                          long w) {
  const long n = static_cast<long>(x.size());
  const long left = w / 2;
  const long right = w - left;
  std::vector<double> out;
  for (long i = left; i <= n - right; ++i) {
    double sum = 0;
    for (long k = i - left; k < i + right; ++k)
      sum += x[static_cast<std::size_t>(k)];
    out.push_back(sum / static_cast<double>(w));
  }
  return out;
}

// Degree-1 weighted least squares with tricube weights over the q nearest
// indices, solved with Cramer's rule.
inline double loess_point_oracle(const std::vector<double>& y, long i, long q) {
  const long n = static_cast<long>(y.size());
  long start = i - (q - 1) / 2;
  if (start < 0) start = 0;
  if (start + q > n) start = n - q;
  const double d_max = std::max(static_cast<double>(i - start),
                                static_cast<double>(start + q - 1 - i));
  double sw = 0, swt = 0, swtt = 0, swy = 0, swty = 0;
  for (long j = start; j < start + q; ++j) {
    const double d = std::abs(static_cast<double>(j - i)) / d_max;
    const double u = 1.0 - d * d * d;
    const double w = u * u * u;
    const double t = static_cast<double>(j - i);
    sw += w;
    swt += w * t;
    swtt += w * t * t;
    swy += w * y[static_cast<std::size_t>(j)];
    swty += w * t * y[static_cast<std::size_t>(j)];
  }
  const double det = sw * swtt - swt * swt;
  if (std::abs(det) < 1e-12 * std::max(1.0, sw * swtt)) return swy / sw;
  return (swy * swtt - swty * swt) / det;
}

// --- synthetic document fixtures -------------------------------------------

inline arclens::Lexicon fixture_lexicon() {
  return arclens::parse_lexicon(
      "happy\t1\nsad\t-1\ngood\t0.75\nbad\t-0.75\ncalm\t0.5\ngloom\t-0.5\n"
      ":)\t0.5\n",
      "fixture");
}

// A document whose per-sentence lexical scores follow round(A*man_in_hole)
// plus +/-1 jitter: structure far above token noise. Built from real text
// through ingest() so the whole corpus path is exercised.
inline arclens::Document synthetic_novel(Eigen::Index n_sentences,
                                         std::uint64_t seed,
                                         double amplitude = 6.0) {
  static const char* kFiller[] = {"the",   "road",  "stone",  "morning",
                                  "field", "river", "window", "evening",
                                  "table", "door",  "garden", "letter"};
  std::mt19937_64 gen(seed);
  std::string text;
  for (Eigen::Index i = 0; i < n_sentences; ++i) {
    const double t =
        static_cast<double>(i) / static_cast<double>(n_sentences - 1);
    const long jitter = static_cast<long>(gen() % 3) - 1;
    const long target = std::lround(amplitude * man_in_hole(t)) + jitter;

    std::vector<std::string> words;
    for (long k = 0; k < std::labs(target); ++k)
      words.push_back(target > 0 ? "happy" : "sad");
    const int fillers = 3 + static_cast<int>(gen() % 5);
    for (int f = 0; f < fillers; ++f)
      words.push_back(kFiller[gen() % std::size(kFiller)]);

    words.front()[0] =
        static_cast<char>(words.front()[0] - 'a' + 'A');  // capitalize
    std::string sentence;
    for (const auto& w : words) {
      if (!sentence.empty()) sentence += ' ';
      sentence += w;
    }
    sentence += '.';
    if (!text.empty()) text += ' ';
    text += sentence;
  }
  return arclens::ingest(text, "synthetic[" + std::to_string(seed) + "]");
}

} // namespace testsupport
