#pragma once

// Minimal self-contained SVG line charts for per-session series.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "signet/errors.hpp"

namespace signet {

struct PlotSeries {
    std::string label;
    std::vector<double> y;
    std::string color = "#1f77b4";
};

struct LineChart {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<double> x;
    std::vector<PlotSeries> series;
    std::optional<std::string> timestamp; // written as a comment when present
    int width = 640;
    int height = 400;
};

namespace detail {

inline std::string fmt(double v, int digits = 2) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

inline std::string escape_xml(const std::string& s) {
    std::string out;
    for (char c : s) {
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

} // namespace detail

inline std::string render_svg(const LineChart& c) {
    if (c.x.empty()) throw Error("plot has no points");
    for (const auto& s : c.series)
        if (s.y.size() != c.x.size()) throw Error("series '" + s.label + "' length differs from x");

    const double left = 70, right = 150, top = 40, bottom = 50;
    const double pw = c.width - left - right, ph = c.height - top - bottom;
    double x0 = *std::min_element(c.x.begin(), c.x.end()), x1 = *std::max_element(c.x.begin(), c.x.end());
    double y0 = INFINITY, y1 = -INFINITY;
    for (const auto& s : c.series)
        for (double v : s.y) y0 = std::min(y0, v), y1 = std::max(y1, v);
    if (c.series.empty()) y0 = 0, y1 = 1;
    if (x1 == x0) x0 -= 1, x1 += 1;
    if (y1 == y0) y0 -= 1, y1 += 1;
    const double pad = 0.05 * (y1 - y0);
    y0 -= pad;
    y1 += pad;
    auto px = [&](double x) { return left + (x - x0) / (x1 - x0) * pw; };
    auto py = [&](double y) { return top + (1.0 - (y - y0) / (y1 - y0)) * ph; };

    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << c.width << "\" height=\"" << c.height
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    if (c.timestamp) o << "<!-- generated " << detail::escape_xml(*c.timestamp) << " -->\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o << "<text x=\"" << c.width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << detail::escape_xml(c.title)
      << "</text>\n";
    o << "<line x1=\"" << left << "\" y1=\"" << top + ph << "\" x2=\"" << left + pw << "\" y2=\"" << top + ph
      << "\" stroke=\"black\"/>\n";
    o << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + ph << "\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 4; ++k) {
        const double yv = y0 + (y1 - y0) * k / 4.0, xv = x0 + (x1 - x0) * k / 4.0;
        o << "<text x=\"" << left - 6 << "\" y=\"" << detail::fmt(py(yv), 1) << "\" text-anchor=\"end\">" << detail::fmt(yv, 3)
          << "</text>\n";
        o << "<text x=\"" << detail::fmt(px(xv), 1) << "\" y=\"" << top + ph + 18 << "\" text-anchor=\"middle\">"
          << detail::fmt(xv, 0) << "</text>\n";
    }
    o << "<text x=\"" << left + pw / 2 << "\" y=\"" << c.height - 10 << "\" text-anchor=\"middle\">"
      << detail::escape_xml(c.x_label) << "</text>\n";
    o << "<text transform=\"translate(16," << top + ph / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
      << detail::escape_xml(c.y_label) << "</text>\n";
    for (std::size_t s = 0; s < c.series.size(); ++s) {
        const auto& ser = c.series[s];
        o << "<polyline fill=\"none\" stroke=\"" << ser.color << "\" stroke-width=\"2\" points=\"";
        for (std::size_t i = 0; i < c.x.size(); ++i) o << (i ? " " : "") << detail::fmt(px(c.x[i])) << ',' << detail::fmt(py(ser.y[i]));
        o << "\"/>\n";
        for (std::size_t i = 0; i < c.x.size(); ++i)
            o << "<circle cx=\"" << detail::fmt(px(c.x[i])) << "\" cy=\"" << detail::fmt(py(ser.y[i])) << "\" r=\"3\" fill=\""
              << ser.color << "\"/>\n";
        const double ly = top + 10 + 18.0 * static_cast<double>(s);
        o << "<line x1=\"" << left + pw + 12 << "\" y1=\"" << ly << "\" x2=\"" << left + pw + 32 << "\" y2=\"" << ly
          << "\" stroke=\"" << ser.color << "\" stroke-width=\"2\"/>\n";
        o << "<text x=\"" << left + pw + 36 << "\" y=\"" << ly + 4 << "\">" << detail::escape_xml(ser.label) << "</text>\n";
    }
    o << "</svg>\n";
    return o.str();
}

} // namespace signet
