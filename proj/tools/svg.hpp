#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace dmera::svg {

struct Series {
    std::string label;
    std::vector<double> x, y;
};

/// Minimal log-log (or log-y) polyline chart for smoke-checking benchmark
/// CSVs; no axes ticks, just scaled polylines and labels.
inline std::string line_chart(const std::vector<Series>& series, bool log_x,
                              bool log_y, int width = 640, int height = 440) {
    auto tx = [&](double v) { return log_x ? std::log10(std::max(v, 1e-300)) : v; };
    auto ty = [&](double v) { return log_y ? std::log10(std::max(v, 1e-300)) : v; };

    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& s : series) {
        for (double v : s.x) { xmin = std::min(xmin, tx(v)); xmax = std::max(xmax, tx(v)); }
        for (double v : s.y) { ymin = std::min(ymin, ty(v)); ymax = std::max(ymax, ty(v)); }
    }
    if (xmax <= xmin) xmax = xmin + 1;
    if (ymax <= ymin) ymax = ymin + 1;

    const int pad = 40;
    auto px = [&](double v) { return pad + (tx(v) - xmin) / (xmax - xmin) * (width - 2 * pad); };
    auto py = [&](double v) { return height - pad - (ty(v) - ymin) / (ymax - ymin) * (height - 2 * pad); };

    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                   "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
    char buf[256];
    std::string out;
    std::snprintf(buf, sizeof buf,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\">\n",
                  width, height);
    out += buf;
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        out += "<polyline fill=\"none\" stroke=\"";
        out += colors[k % 8];
        out += "\" stroke-width=\"1.5\" points=\"";
        for (size_t i = 0; i < s.x.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.1f,%.1f ", px(s.x[i]), py(s.y[i]));
            out += buf;
        }
        out += "\"/>\n";
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%d\" y=\"%zu\" font-size=\"12\" fill=\"%s\">%s</text>\n",
                      width - 170, 20 + 16 * k, colors[k % 8], s.label.c_str());
        out += buf;
    }
    out += "</svg>\n";
    return out;
}

}  // namespace dmera::svg
