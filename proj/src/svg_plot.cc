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

#include "nosig/svg_plot.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "nosig/errors.h"

namespace nosig {

namespace {

constexpr std::array<const char*, 6> kPalette{"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                              "#8c564b"};

std::string escape(const std::string& text) {
    std::string out;
    for (char c : text) {
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

// Roughly five "nice" ticks (1, 2, 5 times a power of ten) covering [lo, hi].
std::vector<double> nice_ticks(double lo, double hi) {
    double span = hi - lo;
    double raw = span / 5.0;
    double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        if (m * mag >= raw) {
            step = m * mag;
            break;
        }
    }
    std::vector<double> ticks;
    for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * span; t += step) {
        ticks.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
    }
    return ticks;
}

}  // namespace

std::string render_svg(const PlotSpec& spec, std::span<const PlotSeries> series) {
    double x_lo = std::numeric_limits<double>::infinity();
    double x_hi = -x_lo;
    double y_lo = 0.0;
    double y_hi = -std::numeric_limits<double>::infinity();
    for (const auto& s : series) {
        if (s.x.size() != s.y.size()) throw UserError("plot series x and y differ in length");
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            x_lo = std::min(x_lo, s.x[i]);
            x_hi = std::max(x_hi, s.x[i]);
            y_lo = std::min(y_lo, s.y[i]);
            y_hi = std::max(y_hi, s.y[i]);
        }
    }
    if (!std::isfinite(x_lo) || !std::isfinite(y_hi)) throw UserError("nothing to plot");
    if (x_hi == x_lo) {
        x_lo -= 1.0;
        x_hi += 1.0;
    }
    if (y_hi == y_lo) y_hi = y_lo + 1.0;
    y_hi += 0.05 * (y_hi - y_lo);

    const double left = 70, right = 20, top = 40, bottom = 50;
    const double plot_w = spec.width - left - right;
    const double plot_h = spec.height - top - bottom;
    auto px = [&](double x) { return left + (x - x_lo) / (x_hi - x_lo) * plot_w; };
    auto py = [&](double y) { return top + (1.0 - (y - y_lo) / (y_hi - y_lo)) * plot_h; };

    std::string out = fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\" "
        "font-family=\"sans-serif\" font-size=\"12\">\n",
        spec.width, spec.height, spec.width, spec.height);
    out += fmt::format("<rect width=\"{}\" height=\"{}\" fill=\"white\"/>\n", spec.width, spec.height);
    out += fmt::format("<text x=\"{:.2f}\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">{}</text>\n",
                       spec.width / 2.0, escape(spec.title));

    for (double t : nice_ticks(x_lo, x_hi)) {
        out += fmt::format(
            "<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{0:.2f}\" y2=\"{2:.2f}\" stroke=\"#ddd\"/>\n"
            "<text x=\"{0:.2f}\" y=\"{3:.2f}\" text-anchor=\"middle\">{4:.6g}</text>\n",
            px(t), top, top + plot_h, top + plot_h + 16, t);
    }
    for (double t : nice_ticks(y_lo, y_hi)) {
        out += fmt::format(
            "<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{2:.2f}\" y2=\"{1:.2f}\" stroke=\"#ddd\"/>\n"
            "<text x=\"{3:.2f}\" y=\"{4:.2f}\" text-anchor=\"end\">{5:.6g}</text>\n",
            left, py(t), left + plot_w, left - 6, py(t) + 4, t);
    }
    out += fmt::format("<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"none\" "
                       "stroke=\"black\"/>\n",
                       left, top, plot_w, plot_h);
    out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{}</text>\n", left + plot_w / 2,
                       spec.height - 10.0, escape(spec.x_label));
    out += fmt::format(
        "<text x=\"16\" y=\"{0:.2f}\" text-anchor=\"middle\" transform=\"rotate(-90 16 {0:.2f})\">{1}</text>\n",
        top + plot_h / 2, escape(spec.y_label));

    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        if (s.x.empty()) continue;
        const char* color = kPalette[k % kPalette.size()];
        std::string points;
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            points += fmt::format("{}{:.2f},{:.2f}", i == 0 ? "" : " ", px(s.x[i]), py(s.y[i]));
        }
        if (s.fill) {
            out += fmt::format(
                "<polygon points=\"{:.2f},{:.2f} {} {:.2f},{:.2f}\" fill=\"{}\" fill-opacity=\"0.2\" "
                "stroke=\"none\"/>\n",
                px(s.x.front()), py(0.0), points, px(s.x.back()), py(0.0), color);
        }
        out += fmt::format("<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"/>\n",
                           points, color);
        double ly = top + 14.0 + 16.0 * static_cast<double>(k);
        out += fmt::format(
            "<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{2:.2f}\" y2=\"{1:.2f}\" stroke=\"{3}\" "
            "stroke-width=\"2\"/>\n<text x=\"{4:.2f}\" y=\"{5:.2f}\">{6}</text>\n",
            left + plot_w - 150, ly, left + plot_w - 130, color, left + plot_w - 124, ly + 4, escape(s.label));
    }
    out += "</svg>\n";
    return out;
}

}  // namespace nosig
