// Copyright 2026 Parkset Authors
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

#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace parkset {

/// Minimal SVG writer in world coordinates (y axis up).
class SvgCanvas {
 public:
  SvgCanvas(double x_min, double x_max, double y_min, double y_max,
            int width_px = 800)
      : x_min_(x_min), y_min_(y_min), y_max_(y_max),
        scale_(width_px / (x_max - x_min)),
        width_px_(width_px),
        height_px_(static_cast<int>((y_max - y_min) * scale_)) {}

  void rect(double x_lo, double y_lo, double x_hi, double y_hi,
            const std::string& fill, const std::string& stroke = "none") {
    body_ << "<rect x=\"" << px(x_lo) << "\" y=\"" << py(y_hi) << "\" width=\""
          << (x_hi - x_lo) * scale_ << "\" height=\"" << (y_hi - y_lo) * scale_
          << "\" fill=\"" << fill << "\" stroke=\"" << stroke << "\"/>\n";
  }

  void circle(double x, double y, double r_px, const std::string& fill) {
    body_ << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\""
          << r_px << "\" fill=\"" << fill << "\"/>\n";
  }

  void polyline(const std::vector<std::pair<double, double>>& pts,
                const std::string& stroke, double width = 1.5) {
    body_ << "<polyline fill=\"none\" stroke=\"" << stroke
          << "\" stroke-width=\"" << width << "\" points=\"";
    for (const auto& [x, y] : pts) body_ << px(x) << ',' << py(y) << ' ';
    body_ << "\"/>\n";
  }

  void text(double x, double y, const std::string& label) {
    body_ << "<text x=\"" << px(x) << "\" y=\"" << py(y)
          << "\" font-size=\"12\">" << label << "</text>\n";
  }

  void save(const std::string& path) const {
    std::ofstream out(path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width_px_
        << "\" height=\"" << height_px_ << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << body_.str() << "</svg>\n";
  }

 private:
  double px(double x) const { return (x - x_min_) * scale_; }
  double py(double y) const { return (y_max_ - y) * scale_; }
  double x_min_, y_min_, y_max_, scale_;
  int width_px_, height_px_;
  std::ostringstream body_;
};

}  // namespace parkset
