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
#include <string>

namespace arclens {

enum class SmootherId { rolling, dct, loess };

std::string smoother_name(SmootherId id);
SmootherId smoother_from_name(const std::string& name);

// A smoothed series sampled at narrative fractions. positions are strictly
// increasing in [0, 1] with |positions| == |values| >= 2; only the valid
// (unclipped) region is stored, delimited by [valid_start, valid_end].
struct Arc {
  SmootherId smoother_id = SmootherId::rolling;
  std::string id;  // e.g. "rolling_w10", "dct_lp5", "loess_s50"

  double window_pct = 0;   // rolling
  int low_pass = 0;        // dct
  bool scale_range = false;
  double span = 0;         // loess
  int degree = 1;

  Eigen::VectorXd positions;
  Eigen::VectorXd values;
  double valid_start = 0;
  double valid_end = 1;
  Eigen::Index n_source = 0;  // sentence count of the source series
};

// w = max(2, round(window_pct * n)).
Eigen::Index rolling_window_size(Eigen::Index n, double window_pct);

// Centered moving average. The value at center i is the mean of
// values[i-floor(w/2) .. i+ceil(w/2)-1]; nothing is emitted within half a
// window of either end, so the arc is clipped to roughly
// [window_pct/2, 1-window_pct/2]. ParamError if the series is shorter than
// the window.
Arc rolling_mean(const Eigen::VectorXd& series, double window_pct);

// Orthonormal DCT-II, coefficients at index >= low_pass zeroed, inverted
// with the matching DCT-III, so low_pass == N reproduces the input. With
// scale_range the output is affinely mapped onto [-1, +1]. ParamError when
// low_pass is outside [1, N].
Arc dct_lowpass(const Eigen::VectorXd& series, int low_pass,
                bool scale_range = false);

// Locally weighted regression over the ceil(span*N) nearest neighbors with
// tricube weights w(d) = (1 - (d/d_max)^3)^3, evaluated at each index.
// Degree 1 by default; a degenerate neighborhood falls back to the weighted
// mean. ParamError when the neighborhood has fewer than 3 points.
Arc loess_smooth(const Eigen::VectorXd& series, double span, int degree = 1);

// Smoother choice plus parameters, applied identically to original and
// null-model series.
struct SmootherSpec {
  SmootherId method = SmootherId::rolling;
  double window_pct = 0.10;
  int low_pass = 5;
  bool scale_range = false;
  double span = 0.5;
  int degree = 1;

  Arc apply(const Eigen::VectorXd& series) const;
};

} // namespace arclens
