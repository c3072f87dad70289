#pragma once

// Minimal SVG scatter/line plots: linear or log10 x axis, ticks, markers.
// No timestamps or other run-dependent metadata are written.

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "semitoric/io.hpp"

namespace semitoric::svg {

struct Series {
    std::string label;
    std::vector<std::pair<double, double>> points;
    std::string color = "#1f77b4";
    bool markers = true;
    bool line = false;
    double marker_radius = 2.0;
};

struct Plot {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    int width = 640;
    int height = 480;
    std::vector<Series> series;
    std::vector<std::pair<double, double>> hlines;  // (y, unused) reference levels
};

namespace detail {

inline std::string esc(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

inline std::string num(double x) { return io::fmt_g(x, 6); }

// Roughly five "nice" ticks covering [lo, hi].
inline std::vector<double> nice_ticks(double lo, double hi) {
    const double span = hi - lo;
    if (!(span > 0)) return {lo};
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0})
        if (m * mag >= raw) {
            step = m * mag;
            break;
        }
    std::vector<double> t;
    for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * span; v += step) t.push_back(std::abs(v) < 1e-12 * step ? 0.0 : v);
    return t;
}

}  // namespace detail

inline void render(std::ostream& os, const Plot& plot) {
    const double left = 70, right = 20, top = 40, bottom = 55;
    const double pw = plot.width - left - right, ph = plot.height - top - bottom;

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
    auto xt = [&](double x) { return plot.log_x ? std::log10(x) : x; };
    for (const auto& s : plot.series)
        for (const auto& [x, y] : s.points) {
            if (plot.log_x && !(x > 0)) continue;
            xmin = std::min(xmin, xt(x));
            xmax = std::max(xmax, xt(x));
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    for (const auto& [y, unused] : plot.hlines) {
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
    }
    if (!std::isfinite(xmin)) xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    if (xmax == xmin) xmin -= 0.5, xmax += 0.5;
    if (ymax == ymin) ymin -= 0.5, ymax += 0.5;
    const double ypad = 0.05 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;

    auto sx = [&](double x) { return left + (xt(x) - xmin) / (xmax - xmin) * pw; };
    auto sy = [&](double y) { return top + (ymax - y) / (ymax - ymin) * ph; };

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << plot.width << "\" height=\"" << plot.height
       << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << plot.width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
       << detail::esc(plot.title) << "</text>\n";
    os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
       << "\" fill=\"none\" stroke=\"black\"/>\n";

    // x ticks: decades on a log axis
    if (plot.log_x) {
        for (double e = std::ceil(xmin); e <= xmax + 1e-9; e += 1.0) {
            const double px = left + (e - xmin) / (xmax - xmin) * pw;
            os << "<line x1=\"" << detail::num(px) << "\" y1=\"" << top + ph << "\" x2=\"" << detail::num(px)
               << "\" y2=\"" << top + ph + 5 << "\" stroke=\"black\"/>\n";
            os << "<text x=\"" << detail::num(px) << "\" y=\"" << top + ph + 18 << "\" text-anchor=\"middle\">1e"
               << static_cast<int>(e) << "</text>\n";
        }
    } else {
        for (double t : detail::nice_ticks(xmin, xmax)) {
            const double px = sx(t);
            os << "<line x1=\"" << detail::num(px) << "\" y1=\"" << top + ph << "\" x2=\"" << detail::num(px)
               << "\" y2=\"" << top + ph + 5 << "\" stroke=\"black\"/>\n";
            os << "<text x=\"" << detail::num(px) << "\" y=\"" << top + ph + 18 << "\" text-anchor=\"middle\">"
               << detail::num(t) << "</text>\n";
        }
    }
    for (double t : detail::nice_ticks(ymin, ymax)) {
        const double py = sy(t);
        os << "<line x1=\"" << left - 5 << "\" y1=\"" << detail::num(py) << "\" x2=\"" << left << "\" y2=\""
           << detail::num(py) << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << left - 8 << "\" y=\"" << detail::num(py + 4) << "\" text-anchor=\"end\">"
           << detail::num(t) << "</text>\n";
    }
    os << "<text x=\"" << left + pw / 2 << "\" y=\"" << plot.height - 12 << "\" text-anchor=\"middle\">"
       << detail::esc(plot.x_label) << "</text>\n";
    os << "<text x=\"16\" y=\"" << top + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
       << top + ph / 2 << ")\">" << detail::esc(plot.y_label) << "</text>\n";

    for (const auto& [y, unused] : plot.hlines) {
        os << "<line x1=\"" << left << "\" y1=\"" << detail::num(sy(y)) << "\" x2=\"" << left + pw << "\" y2=\""
           << detail::num(sy(y)) << "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
    }

    double legend_y = top + 14;
    for (const auto& s : plot.series) {
        if (s.line && s.points.size() > 1) {
            os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" points=\"";
            for (const auto& [x, y] : s.points) {
                if (plot.log_x && !(x > 0)) continue;
                os << detail::num(sx(x)) << ',' << detail::num(sy(y)) << ' ';
            }
            os << "\"/>\n";
        }
        if (s.markers) {
            os << "<g fill=\"" << s.color << "\">\n";
            for (const auto& [x, y] : s.points) {
                if (plot.log_x && !(x > 0)) continue;
                os << "<circle cx=\"" << detail::num(sx(x)) << "\" cy=\"" << detail::num(sy(y)) << "\" r=\""
                   << s.marker_radius << "\"/>\n";
            }
            os << "</g>\n";
        }
        if (!s.label.empty()) {
            os << "<rect x=\"" << left + pw - 150 << "\" y=\"" << legend_y - 8 << "\" width=\"10\" height=\"10\" fill=\""
               << s.color << "\"/>\n";
            os << "<text x=\"" << left + pw - 135 << "\" y=\"" << legend_y << "\">" << detail::esc(s.label)
               << "</text>\n";
            legend_y += 16;
        }
    }
    os << "</svg>\n";
}

}  // namespace semitoric::svg
