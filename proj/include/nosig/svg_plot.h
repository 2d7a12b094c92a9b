// Copyright 2026 The nosig Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NOSIG_SVG_PLOT_H
#define NOSIG_SVG_PLOT_H

#include <span>
#include <string>
#include <vector>

namespace nosig {

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    /// Shade the area between the curve and y = 0.
    bool fill = false;
};

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    int width = 720;
    int height = 420;
};

/// Line/area chart with linear axes, tick labels and a legend. Output is a
/// pure function of the inputs.
std::string render_svg(const PlotSpec& spec, std::span<const PlotSeries> series);

}  // namespace nosig

#endif
