// Copyright 2026 The dermbench Authors
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

#include "dermbench/svg.hpp"

#include <array>
#include <cstdio>

namespace dermbench {
namespace {

constexpr std::array<const char*, 10> kPalette = {
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
    "#8c564b", "#e377c2", "#17becf", "#7f7f7f", "#bcbd22",
};

constexpr double kLeft = 64, kRight = 24, kTop = 44, kBottom = 56;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out.push_back(ch);
        }
    }
    return out;
}

class Frame {
public:
    explicit Frame(const SvgStyle& s)
        : w_(s.width - kLeft - kRight), h_(s.height - kTop - kBottom) {}
    double x(double fpr) const { return kLeft + fpr * w_; }
    double y(double tpr) const { return kTop + (1.0 - tpr) * h_; }
    double w() const { return w_; }
    double h() const { return h_; }

private:
    double w_, h_;
};

}  // namespace

std::string emit_svg(std::span<const LabeledCurve> curves, std::span<const OperatorPoint> points,
                     const SvgStyle& style) {
    const Frame f(style);
    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + std::to_string(style.width) +
           "\" height=\"" + std::to_string(style.height) + "\" viewBox=\"0 0 " + std::to_string(style.width) + " " +
           std::to_string(style.height) + "\">\n";
    out += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(style.width) + "\" height=\"" +
           std::to_string(style.height) + "\" fill=\"white\"/>\n";
    if (!style.title.empty()) {
        out += "<text x=\"" + num(style.width / 2.0) +
               "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">" +
               xml_escape(style.title) + "</text>\n";
    }

    // Axes, grid and ticks.
    out += "<g id=\"axes\" font-family=\"sans-serif\" font-size=\"11\">\n";
    for (int i = 0; i <= 5; ++i) {
        const double v = i / 5.0;
        const std::string label = num(v).substr(0, 3);
        out += "<line x1=\"" + num(f.x(v)) + "\" y1=\"" + num(f.y(0)) + "\" x2=\"" + num(f.x(v)) + "\" y2=\"" +
               num(f.y(1)) + "\" stroke=\"#e6e6e6\"/>\n";
        out += "<line x1=\"" + num(f.x(0)) + "\" y1=\"" + num(f.y(v)) + "\" x2=\"" + num(f.x(1)) + "\" y2=\"" +
               num(f.y(v)) + "\" stroke=\"#e6e6e6\"/>\n";
        out += "<text x=\"" + num(f.x(v)) + "\" y=\"" + num(f.y(0) + 16) + "\" text-anchor=\"middle\">" + label +
               "</text>\n";
        out += "<text x=\"" + num(f.x(0) - 6) + "\" y=\"" + num(f.y(v) + 4) + "\" text-anchor=\"end\">" + label +
               "</text>\n";
    }
    out += "<rect x=\"" + num(f.x(0)) + "\" y=\"" + num(f.y(1)) + "\" width=\"" + num(f.w()) + "\" height=\"" +
           num(f.h()) + "\" fill=\"none\" stroke=\"black\"/>\n";
    out += "<text x=\"" + num(f.x(0.5)) + "\" y=\"" + num(f.y(0) + 36) +
           "\" text-anchor=\"middle\" font-size=\"13\">False positive rate (1 - specificity)</text>\n";
    out += "<text x=\"16\" y=\"" + num(f.y(0.5)) + "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 " +
           num(f.y(0.5)) + ")\">True positive rate (sensitivity)</text>\n";
    out += "</g>\n";

    if (style.chance_diagonal) {
        out += "<line id=\"chance\" x1=\"" + num(f.x(0)) + "\" y1=\"" + num(f.y(0)) + "\" x2=\"" + num(f.x(1)) +
               "\" y2=\"" + num(f.y(1)) + "\" stroke=\"#999999\" stroke-dasharray=\"6,4\"/>\n";
    }

    std::string legend;
    double legend_y = f.y(0) - 10 - 16.0 * static_cast<double>(curves.size() - 1);
    for (std::size_t i = 0; i < curves.size(); ++i) {
        const auto& c = curves[i];
        const std::string color = c.color.empty() ? kPalette[i % kPalette.size()] : c.color;
        out += "<polyline class=\"roc\" fill=\"none\" stroke=\"" + color + "\" stroke-width=\"2\" points=\"";
        for (std::size_t k = 0; k < c.curve.points.size(); ++k) {
            if (k) out.push_back(' ');
            out += num(f.x(c.curve.points[k].fpr)) + "," + num(f.y(c.curve.points[k].tpr));
        }
        out += "\"/>\n";
        const double ly = legend_y + 16.0 * static_cast<double>(i);
        legend += "<line x1=\"" + num(f.x(0.45)) + "\" y1=\"" + num(ly - 4) + "\" x2=\"" + num(f.x(0.45) + 18) +
                  "\" y2=\"" + num(ly - 4) + "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
        legend += "<text x=\"" + num(f.x(0.45) + 24) + "\" y=\"" + num(ly) +
                  "\" font-family=\"sans-serif\" font-size=\"11\">" + xml_escape(c.label) + "</text>\n";
    }

    for (const auto& p : points) {
        const bool highlight = !style.highlight_name.empty() && p.name == style.highlight_name;
        out += "<circle class=\"operator\" cx=\"" + num(f.x(1.0 - p.specificity)) + "\" cy=\"" +
               num(f.y(p.sensitivity)) + "\" r=\"" + (highlight ? "7" : "4") + "\" fill=\"" +
               (highlight ? "#2ca02c" : "#555555") + "\" stroke=\"black\" stroke-width=\"" +
               (highlight ? "1.5" : "0.5") + "\"><title>" + xml_escape(p.name) + "</title></circle>\n";
    }
    out += legend;
    out += "</svg>\n";
    return out;
}

}  // namespace dermbench
