#include "dmme/svgplot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace dmme {

namespace {

constexpr double kWidth = 800.0, kHeight = 500.0;
constexpr double kLeft = 70.0, kRight = 20.0, kTop = 42.0, kBottom = 52.0;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string fmt_tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

// Round the range outward to tick-friendly steps.
std::vector<double> ticks(double lo, double hi, int target = 6) {
    if (!(hi > lo)) hi = lo + 1.0;
    const double raw = (hi - lo) / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 2.5, 5.0, 10.0}) {
        if (mag * m >= raw) {
            step = mag * m;
            break;
        }
    }
    std::vector<double> out;
    double t = std::ceil(lo / step) * step;
    for (; t <= hi + 1e-12 * step; t += step) out.push_back(t == 0.0 ? 0.0 : t);
    return out;
}

}  // namespace

std::string render_svg_plot(const PlotSpec& spec) {
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : spec.series) {
        for (double v : s.x) {
            xmin = std::min(xmin, v);
            xmax = std::max(xmax, v);
        }
        for (double v : s.y) {
            ymin = std::min(ymin, v);
            ymax = std::max(ymax, v);
        }
    }
    if (!std::isfinite(xmin)) {
        xmin = 0;
        xmax = 1;
        ymin = 0;
        ymax = 1;
    }
    if (xmax == xmin) xmax = xmin + 1.0;
    if (ymax == ymin) {
        ymax += 0.5;
        ymin -= 0.5;
    }
    const double ypad = 0.05 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;

    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + pw * (x - xmin) / (xmax - xmin); };
    auto py = [&](double y) { return kTop + ph * (1.0 - (y - ymin) / (ymax - ymin)); };

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + fmt(kWidth) +
           "\" height=\"" + fmt(kHeight) + "\" viewBox=\"0 0 " + fmt(kWidth) + " " + fmt(kHeight) +
           "\">\n";
    svg += "<rect width=\"" + fmt(kWidth) + "\" height=\"" + fmt(kHeight) + "\" fill=\"white\"/>\n";
    svg += "<text x=\"" + fmt(kWidth / 2) + "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" +
           spec.title + "</text>\n";

    // axes box and ticks
    svg += "<rect x=\"" + fmt(kLeft) + "\" y=\"" + fmt(kTop) + "\" width=\"" + fmt(pw) +
           "\" height=\"" + fmt(ph) + "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
    for (double t : ticks(xmin, xmax)) {
        const double x = px(t);
        svg += "<line x1=\"" + fmt(x) + "\" y1=\"" + fmt(kTop + ph) + "\" x2=\"" + fmt(x) +
               "\" y2=\"" + fmt(kTop + ph + 5) + "\" stroke=\"black\"/>\n";
        svg += "<line x1=\"" + fmt(x) + "\" y1=\"" + fmt(kTop) + "\" x2=\"" + fmt(x) + "\" y2=\"" +
               fmt(kTop + ph) + "\" stroke=\"#dddddd\" stroke-width=\"0.5\"/>\n";
        svg += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(kTop + ph + 18) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
               fmt_tick(t) + "</text>\n";
    }
    for (double t : ticks(ymin, ymax)) {
        const double y = py(t);
        svg += "<line x1=\"" + fmt(kLeft - 5) + "\" y1=\"" + fmt(y) + "\" x2=\"" + fmt(kLeft) +
               "\" y2=\"" + fmt(y) + "\" stroke=\"black\"/>\n";
        svg += "<line x1=\"" + fmt(kLeft) + "\" y1=\"" + fmt(y) + "\" x2=\"" + fmt(kLeft + pw) +
               "\" y2=\"" + fmt(y) + "\" stroke=\"#dddddd\" stroke-width=\"0.5\"/>\n";
        svg += "<text x=\"" + fmt(kLeft - 8) + "\" y=\"" + fmt(y + 4) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" + fmt_tick(t) +
               "</text>\n";
    }
    svg += "<text x=\"" + fmt(kLeft + pw / 2) + "\" y=\"" + fmt(kHeight - 14) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" + spec.x_label +
           "</text>\n";
    svg += "<text x=\"18\" y=\"" + fmt(kTop + ph / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 18 " +
           fmt(kTop + ph / 2) + ")\">" + spec.y_label + "</text>\n";

    for (const auto& s : spec.series) {
        std::string pts;
        const size_t n = std::min(s.x.size(), s.y.size());
        for (size_t i = 0; i < n; ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            pts += fmt(px(s.x[i])) + "," + fmt(py(s.y[i])) + " ";
        }
        svg += "<polyline fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"1.5\"";
        if (!s.dash.empty()) svg += " stroke-dasharray=\"" + s.dash + "\"";
        svg += " points=\"" + pts + "\"/>\n";
    }

    // legend
    double ly = kTop + 14;
    for (const auto& s : spec.series) {
        const double lx = kLeft + pw - 170;
        svg += "<line x1=\"" + fmt(lx) + "\" y1=\"" + fmt(ly - 4) + "\" x2=\"" + fmt(lx + 28) +
               "\" y2=\"" + fmt(ly - 4) + "\" stroke=\"" + s.color + "\" stroke-width=\"1.5\"";
        if (!s.dash.empty()) svg += " stroke-dasharray=\"" + s.dash + "\"";
        svg += "/>\n";
        svg += "<text x=\"" + fmt(lx + 34) + "\" y=\"" + fmt(ly) +
               "\" font-family=\"sans-serif\" font-size=\"12\">" + s.name + "</text>\n";
        ly += 16;
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace dmme
