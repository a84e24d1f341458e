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

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <string>
#include <vector>

#include "arclens/errors.hpp"
#include "arclens/report.hpp"

namespace arclens {

namespace {

std::string px(double v) {
  char buf[32];
  const auto [end, ec] =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, 2);
  (void)ec;
  return std::string(buf, end);
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (const char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

double sign_of(double v) { return v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0); }

struct Mapper {
  double x0, x_scale;
  double y_top, y_range, v_max, plot_h;
  double x(double pos) const { return x0 + x_scale * pos; }
  double y(double v) const { return y_top + plot_h * (v_max - v) / y_range; }
};

// Polyline pieces that never change sign; consecutive pieces share their
// zero-crossing endpoint.
struct Segment {
  double sign = 0;
  std::vector<std::pair<double, double>> points;  // (position, value)
};

std::vector<Segment> split_by_sign(const Arc& arc) {
  std::vector<Segment> segments;
  Segment cur;
  for (Eigen::Index i = 0; i < arc.positions.size(); ++i) {
    const double p = arc.positions[i];
    const double v = arc.values[i];
    const double sv = sign_of(v);
    if (cur.points.empty() || cur.sign == 0 || sv == 0 || sv == cur.sign) {
      cur.points.emplace_back(p, v);
      if (cur.sign == 0) cur.sign = sv;
      continue;
    }
    // Sign flip: close at the crossing and restart there.
    const auto [pp, pv] = cur.points.back();
    std::pair<double, double> boundary(pp, pv);
    if (pv != 0) {
      const double t = pv / (pv - v);
      boundary = {pp + t * (p - pp), 0.0};
      cur.points.push_back(boundary);
    }
    segments.push_back(std::move(cur));
    cur = Segment{sv, {boundary, {p, v}}};
  }
  if (cur.points.size() >= 2) segments.push_back(std::move(cur));
  return segments;
}

} // namespace

std::string render_arc_svg(const std::vector<Arc>& arcs,
                           const std::vector<InflectionPoint>& extrema,
                           const NullBand* band, const PlotOptions& options) {
  if (arcs.empty()) throw ParamError("no arcs to plot");

  double v_min = 0;
  double v_max = 0;
  for (const auto& arc : arcs) {
    v_min = std::min(v_min, arc.values.minCoeff());
    v_max = std::max(v_max, arc.values.maxCoeff());
  }
  if (band != nullptr) {
    v_min = std::min({v_min, band->lower.minCoeff(), band->original.minCoeff()});
    v_max = std::max({v_max, band->upper.maxCoeff(), band->original.maxCoeff()});
  }
  if (v_max == v_min) v_max = v_min + 1;
  const double pad = 0.05 * (v_max - v_min);
  v_min -= pad;
  v_max += pad;

  const double margin = options.margin;
  const double plot_w = options.width - 2 * margin;
  const double plot_h = options.height - 2 * margin;
  const Mapper map{margin, plot_w, margin, v_max - v_min, v_max, plot_h};

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(options.width) + "\" height=\"" +
         std::to_string(options.height) + "\" viewBox=\"0 0 " +
         std::to_string(options.width) + " " + std::to_string(options.height) +
         "\">\n";
  svg += "<style>";
  svg += ".arc{fill:none;stroke-width:1.6}";
  svg += ".pos{stroke:" + options.positive_color + "}";
  svg += ".neg{stroke:" + options.negative_color + "}";
  svg += ".band{fill:#888888;fill-opacity:0.3;stroke:none}";
  svg += ".zero{stroke:#444444;stroke-width:0.8;stroke-dasharray:5,4}";
  svg += ".axis{stroke:#222222;stroke-width:1}";
  svg += ".tick{font:11px sans-serif;fill:#222222}";
  svg += ".plabel{font:11px sans-serif;fill:#111111}";
  svg += ".pmark{fill:#111111}";
  svg += ".legend{font:12px sans-serif;fill:#111111}";
  svg += ".title{font:14px sans-serif;fill:#111111}";
  svg += "</style>\n";

  if (band != nullptr && band->grid.size() >= 2) {
    svg += "<polygon class=\"band\" points=\"";
    for (Eigen::Index i = 0; i < band->grid.size(); ++i) {
      svg += px(map.x(band->grid[i])) + "," + px(map.y(band->upper[i])) + " ";
    }
    for (Eigen::Index i = band->grid.size() - 1; i >= 0; --i) {
      svg += px(map.x(band->grid[i])) + "," + px(map.y(band->lower[i]));
      if (i > 0) svg += " ";
    }
    svg += "\"/>\n";
  }

  // Zero line and frame.
  svg += "<line class=\"zero\" x1=\"" + px(map.x(0)) + "\" y1=\"" +
         px(map.y(0)) + "\" x2=\"" + px(map.x(1)) + "\" y2=\"" + px(map.y(0)) +
         "\"/>\n";
  svg += "<line class=\"axis\" x1=\"" + px(margin) + "\" y1=\"" +
         px(margin + plot_h) + "\" x2=\"" + px(margin + plot_w) + "\" y2=\"" +
         px(margin + plot_h) + "\"/>\n";
  svg += "<line class=\"axis\" x1=\"" + px(margin) + "\" y1=\"" + px(margin) +
         "\" x2=\"" + px(margin) + "\" y2=\"" + px(margin + plot_h) + "\"/>\n";

  for (int pct = 0; pct <= 100; pct += 25) {
    const double x = map.x(pct / 100.0);
    svg += "<line class=\"axis\" x1=\"" + px(x) + "\" y1=\"" +
           px(margin + plot_h) + "\" x2=\"" + px(x) + "\" y2=\"" +
           px(margin + plot_h + 5) + "\"/>\n";
    svg += "<text class=\"tick\" text-anchor=\"middle\" x=\"" + px(x) +
           "\" y=\"" + px(margin + plot_h + 18) + "\">" + std::to_string(pct) +
           "%</text>\n";
  }
  for (const double v : {v_min + pad, 0.0, v_max - pad}) {
    svg += "<text class=\"tick\" text-anchor=\"end\" x=\"" + px(margin - 6) +
           "\" y=\"" + px(map.y(v) + 4) + "\">" + px(v) + "</text>\n";
  }

  static constexpr const char* kDashes[] = {"", "6,3", "2,3", "8,3,2,3", "1,2"};
  for (std::size_t a = 0; a < arcs.size(); ++a) {
    const char* dash = kDashes[a % 5];
    for (const Segment& seg : split_by_sign(arcs[a])) {
      svg += "<path class=\"arc ";
      svg += seg.sign < 0 ? "neg" : "pos";
      svg += "\"";
      if (dash[0] != '\0') svg += " stroke-dasharray=\"" + std::string(dash) + "\"";
      svg += " d=\"";
      for (std::size_t i = 0; i < seg.points.size(); ++i) {
        svg += i == 0 ? "M" : " L";
        svg += px(map.x(seg.points[i].first)) + "," +
               px(map.y(seg.points[i].second));
      }
      svg += "\"/>\n";
    }
    svg += "<text class=\"legend\" x=\"" + px(margin + plot_w - 150) +
           "\" y=\"" + px(margin + 16 * (static_cast<double>(a) + 1)) + "\">" +
           xml_escape(arcs[a].id) + (dash[0] != '\0' ? std::string(" (") + dash + ")"
                                                     : std::string(" (solid)")) +
           "</text>\n";
  }

  for (const auto& point : extrema) {
    const double x = map.x(point.position);
    const double y = map.y(point.value);
    svg += "<circle class=\"pmark\" cx=\"" + px(x) + "\" cy=\"" + px(y) +
           "\" r=\"2.5\"/>\n";
    const double dy = point.kind == ExtremumKind::maximum ? -6.0 : 14.0;
    svg += "<text class=\"plabel\" text-anchor=\"middle\" x=\"" + px(x) +
           "\" y=\"" + px(y + dy) + "\">" + xml_escape(point.label) +
           "</text>\n";
  }

  if (!options.title.empty()) {
    svg += "<text class=\"title\" x=\"" + px(margin) + "\" y=\"" +
           px(margin - 12) + "\">" + xml_escape(options.title) + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

} // namespace arclens
