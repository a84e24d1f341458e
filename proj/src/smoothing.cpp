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

#include "arclens/smoothing.hpp"

#include <Eigen/Dense>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "arclens/errors.hpp"

namespace arclens {

namespace {

Eigen::VectorXd fraction_grid(Eigen::Index n) {
  Eigen::VectorXd positions(n);
  for (Eigen::Index i = 0; i < n; ++i)
    positions[i] = static_cast<double>(i) / static_cast<double>(n - 1);
  return positions;
}

void rescale_to_unit(Eigen::VectorXd& values) {
  const double lo = values.minCoeff();
  const double hi = values.maxCoeff();
  if (hi == lo) {
    values.setZero();
    return;
  }
  values = (2.0 * (values.array() - lo) / (hi - lo) - 1.0).matrix();
}

std::string format_pct(double fraction) {
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf),
                                       fraction * 100.0);
  (void)ec;
  std::string out(buf, end);
  // integral percents read as integers: "10" not "10.0" or "1e+01"
  if (out.size() > 2 && out.substr(out.size() - 2) == ".0")
    out.resize(out.size() - 2);
  return out;
}

} // namespace

std::string smoother_name(SmootherId id) {
  switch (id) {
    case SmootherId::rolling: return "rolling";
    case SmootherId::dct: return "dct";
    case SmootherId::loess: return "loess";
  }
  return "rolling";
}

SmootherId smoother_from_name(const std::string& name) {
  if (name == "rolling") return SmootherId::rolling;
  if (name == "dct") return SmootherId::dct;
  if (name == "loess") return SmootherId::loess;
  throw ParamError("unknown smoother '" + name +
                   "' (expected rolling|dct|loess)");
}

Eigen::Index rolling_window_size(Eigen::Index n, double window_pct) {
  const auto rounded =
      static_cast<Eigen::Index>(std::lround(window_pct * static_cast<double>(n)));
  return std::max<Eigen::Index>(2, rounded);
}

Arc rolling_mean(const Eigen::VectorXd& series, double window_pct) {
  if (!(window_pct > 0 && window_pct < 1))
    throw ParamError("window_pct must be in (0, 1)");
  const Eigen::Index n = series.size();
  const Eigen::Index w = rolling_window_size(n, window_pct);
  if (n < w) throw ParamError("series shorter than window");

  const Eigen::Index left = w / 2;
  const Eigen::Index right = w - left;  // window is [i-left, i+right-1]
  const Eigen::Index first = left;
  const Eigen::Index last = n - right;  // inclusive
  const Eigen::Index m = last - first + 1;

  Arc arc;
  arc.smoother_id = SmootherId::rolling;
  arc.window_pct = window_pct;
  arc.id = "rolling_w" + format_pct(window_pct);
  arc.n_source = n;
  arc.positions.resize(m);
  arc.values.resize(m);
  for (Eigen::Index i = first; i <= last; ++i) {
    // Plain left-to-right summation; the windows are short and the result
    // matches a direct per-window oracle bit for bit.
    double sum = 0;
    for (Eigen::Index k = i - left; k < i + right; ++k) sum += series[k];
    arc.values[i - first] = sum / static_cast<double>(w);
    arc.positions[i - first] =
        static_cast<double>(i) / static_cast<double>(n - 1);
  }
  arc.valid_start = arc.positions[0];
  arc.valid_end = arc.positions[m - 1];
  return arc;
}

Arc dct_lowpass(const Eigen::VectorXd& series, int low_pass, bool scale_range) {
  const Eigen::Index n = series.size();
  if (n < 2) throw ParamError("series needs at least 2 values");
  if (low_pass < 1 || low_pass > n)
    throw ParamError("low_pass must be in [1, N]");

  // Orthonormal DCT-II basis, first `low_pass` rows only: coefficients above
  // the cut are zero and never needed.
  const Eigen::Index k = low_pass;
  Eigen::MatrixXd basis(k, n);
  const double step = std::numbers::pi / static_cast<double>(n);
  for (Eigen::Index row = 0; row < k; ++row) {
    const double scale = row == 0 ? std::sqrt(1.0 / static_cast<double>(n))
                                  : std::sqrt(2.0 / static_cast<double>(n));
    for (Eigen::Index col = 0; col < n; ++col)
      basis(row, col) =
          scale * std::cos(step * (static_cast<double>(col) + 0.5) *
                           static_cast<double>(row));
  }

  const Eigen::VectorXd coeffs = basis * series;
  Eigen::VectorXd smoothed = basis.transpose() * coeffs;
  if (scale_range) rescale_to_unit(smoothed);

  Arc arc;
  arc.smoother_id = SmootherId::dct;
  arc.low_pass = low_pass;
  arc.scale_range = scale_range;
  arc.id = "dct_lp" + std::to_string(low_pass);
  arc.n_source = n;
  arc.positions = fraction_grid(n);
  arc.values = std::move(smoothed);
  arc.valid_start = 0;
  arc.valid_end = 1;
  return arc;
}

namespace {

// Nearest-neighbor window of q consecutive indices around i, clamped to the
// series; ties resolve toward the left.
Eigen::Index window_start(Eigen::Index i, Eigen::Index q, Eigen::Index n) {
  Eigen::Index start = i - (q - 1) / 2;
  if (start < 0) start = 0;
  if (start + q > n) start = n - q;
  return start;
}

} // namespace

Arc loess_smooth(const Eigen::VectorXd& series, double span, int degree) {
  if (!(span > 0 && span <= 1)) throw ParamError("span must be in (0, 1]");
  if (degree < 0 || degree > 2) throw ParamError("degree must be 0, 1 or 2");
  const Eigen::Index n = series.size();
  const auto q = static_cast<Eigen::Index>(
      std::ceil(span * static_cast<double>(n)));
  if (q < 3) throw ParamError("span too small: neighborhood below 3 points");

  Arc arc;
  arc.smoother_id = SmootherId::loess;
  arc.span = span;
  arc.degree = degree;
  arc.id = "loess_s" + format_pct(span);
  arc.n_source = n;
  arc.positions = fraction_grid(n);
  arc.values.resize(n);

  const int terms = degree + 1;
  Eigen::MatrixXd normal(terms, terms);
  Eigen::VectorXd rhs(terms);
  Eigen::VectorXd powers(2 * degree + 1);

  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index start = window_start(i, q, n);
    const double d_max = std::max<double>(
        static_cast<double>(i - start), static_cast<double>(start + q - 1 - i));

    double weight_sum = 0;
    double weighted_mean = 0;
    powers.setZero();
    rhs.setZero();
    for (Eigen::Index j = start; j < start + q; ++j) {
      const double d = std::abs(static_cast<double>(j - i)) / d_max;
      const double u = 1.0 - d * d * d;
      const double w = u * u * u;
      const double t = static_cast<double>(j - i);  // centered at i
      double tp = w;
      for (int p = 0; p <= 2 * degree; ++p) {
        powers[p] += tp;
        tp *= t;
      }
      tp = w;
      for (int p = 0; p <= degree; ++p) {
        rhs[p] += tp * series[j];
        tp *= t;
      }
      weight_sum += w;
      weighted_mean += w * series[j];
    }

    for (int r = 0; r < terms; ++r)
      for (int c = 0; c < terms; ++c) normal(r, c) = powers[r + c];

    // Fitted value at the center is the intercept of the local polynomial.
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(normal);
    if (lu.isInvertible()) {
      arc.values[i] = lu.solve(rhs)[0];
    } else {
      arc.values[i] = weighted_mean / weight_sum;
    }
  }
  arc.valid_start = 0;
  arc.valid_end = 1;
  return arc;
}

Arc SmootherSpec::apply(const Eigen::VectorXd& series) const {
  switch (method) {
    case SmootherId::rolling: return rolling_mean(series, window_pct);
    case SmootherId::dct: return dct_lowpass(series, low_pass, scale_range);
    case SmootherId::loess: return loess_smooth(series, span, degree);
  }
  throw ParamError("unknown smoother");
}

} // namespace arclens
