#pragma once

// Minimal static SVG 1.1 line-plot emitter: axes, ticks, legend, a handful
// of stroke styles. No external plotting dependency.

#include <string>
#include <vector>

namespace dmme {

struct PlotSeries {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
    std::string color = "#1f6eb4";
    std::string dash;  // e.g. "6,4" for dashed, "2,3" for dotted; empty = solid
};

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<PlotSeries> series;
};

std::string render_svg_plot(const PlotSpec& spec);

}  // namespace dmme
