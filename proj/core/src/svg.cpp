#include "sevt/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace sevt::svg {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string escape(const std::string& s) {
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

// Tick step of the form {1,2,5} * 10^k near range/target.
double nice_step(double range, int target) {
    if (range <= 0.0) return 1.0;
    const double raw = range / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double norm = raw / mag;
    if (norm <= 1.5) return mag;
    if (norm <= 3.5) return 2.0 * mag;
    if (norm <= 7.5) return 5.0 * mag;
    return 10.0 * mag;
}

}  // namespace

std::string Chart::render(int width, int height) const {
    const double ml = 72, mr = 18, mt = 40, mb = 52;
    double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
    double y_min = x_min, y_max = -x_min;
    for (const Series& s : series) {
        for (std::size_t i = 0; i < s.points.size(); ++i) {
            x_min = std::min(x_min, s.points[i].first);
            x_max = std::max(x_max, s.points[i].first);
            y_min = std::min(y_min, s.points[i].second);
            y_max = std::max(y_max, s.points[i].second);
            if (i < s.err_low.size()) y_min = std::min(y_min, s.err_low[i]);
            if (i < s.err_high.size()) y_max = std::max(y_max, s.err_high[i]);
        }
    }
    if (!(x_min <= x_max)) {
        x_min = 0;
        x_max = 1;
        y_min = 0;
        y_max = 1;
    }
    if (x_max == x_min) {
        x_min -= 0.5;
        x_max += 0.5;
    }
    if (y_max == y_min) {
        y_min -= 0.5;
        y_max += 0.5;
    }
    const double x_pad = 0.04 * (x_max - x_min), y_pad = 0.06 * (y_max - y_min);
    x_min -= x_pad;
    x_max += x_pad;
    y_min -= y_pad;
    y_max += y_pad;

    const double pw = width - ml - mr, ph = height - mt - mb;
    auto px = [&](double x) { return ml + (x - x_min) / (x_max - x_min) * pw; };
    auto py = [&](double y) { return mt + (1.0 - (y - y_min) / (y_max - y_min)) * ph; };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
           "\" height=\"" + std::to_string(height) + "\" font-family=\"sans-serif\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!title.empty())
        out += "<text x=\"" + num(width / 2.0) +
               "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" + escape(title) +
               "</text>\n";

    // Axes and ticks.
    const double x_step = nice_step(x_max - x_min, 6), y_step = nice_step(y_max - y_min, 6);
    for (double x = std::ceil(x_min / x_step) * x_step; x <= x_max + 1e-12 * x_step;
         x += x_step) {
        out += "<line x1=\"" + num(px(x)) + "\" y1=\"" + num(mt) + "\" x2=\"" + num(px(x)) +
               "\" y2=\"" + num(mt + ph) + "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        out += "<text x=\"" + num(px(x)) + "\" y=\"" + num(mt + ph + 18) +
               "\" text-anchor=\"middle\" font-size=\"11\">" + tick_label(x) + "</text>\n";
    }
    for (double y = std::ceil(y_min / y_step) * y_step; y <= y_max + 1e-12 * y_step;
         y += y_step) {
        out += "<line x1=\"" + num(ml) + "\" y1=\"" + num(py(y)) + "\" x2=\"" + num(ml + pw) +
               "\" y2=\"" + num(py(y)) + "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        out += "<text x=\"" + num(ml - 6) + "\" y=\"" + num(py(y) + 4) +
               "\" text-anchor=\"end\" font-size=\"11\">" + tick_label(y) + "</text>\n";
    }
    out += "<rect x=\"" + num(ml) + "\" y=\"" + num(mt) + "\" width=\"" + num(pw) +
           "\" height=\"" + num(ph) + "\" fill=\"none\" stroke=\"#333333\"/>\n";
    if (!x_label.empty())
        out += "<text x=\"" + num(ml + pw / 2) + "\" y=\"" + num(height - 12.0) +
               "\" text-anchor=\"middle\" font-size=\"12\">" + escape(x_label) + "</text>\n";
    if (!y_label.empty())
        out += "<text x=\"16\" y=\"" + num(mt + ph / 2) +
               "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 16 " +
               num(mt + ph / 2) + ")\">" + escape(y_label) + "</text>\n";

    for (const Series& s : series) {
        for (std::size_t i = 0; i < s.points.size(); ++i) {
            if (i < s.err_low.size() && i < s.err_high.size()) {
                const double x = px(s.points[i].first);
                out += "<line x1=\"" + num(x) + "\" y1=\"" + num(py(s.err_low[i])) + "\" x2=\"" +
                       num(x) + "\" y2=\"" + num(py(s.err_high[i])) + "\" stroke=\"" + s.color +
                       "\" stroke-width=\"1\" opacity=\"0.7\"/>\n";
                for (double e : {s.err_low[i], s.err_high[i]})
                    out += "<line x1=\"" + num(x - 3) + "\" y1=\"" + num(py(e)) + "\" x2=\"" +
                           num(x + 3) + "\" y2=\"" + num(py(e)) + "\" stroke=\"" + s.color +
                           "\" stroke-width=\"1\" opacity=\"0.7\"/>\n";
            }
        }
        if ((s.style == Style::line || s.style == Style::line_points) && s.points.size() > 1) {
            std::string pts;
            for (const auto& [x, y] : s.points)
                pts += num(px(x)) + "," + num(py(y)) + " ";
            out += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" + s.color +
                   "\" stroke-width=\"1.8\"" +
                   (s.dashed ? " stroke-dasharray=\"6 4\"" : "") + "/>\n";
        }
        if (s.style == Style::points || s.style == Style::line_points) {
            for (const auto& [x, y] : s.points)
                out += "<circle cx=\"" + num(px(x)) + "\" cy=\"" + num(py(y)) +
                       "\" r=\"3\" fill=\"" + s.color + "\"/>\n";
        }
    }

    // Legend.
    double ly = mt + 14;
    for (const Series& s : series) {
        if (s.label.empty()) continue;
        const double lx = ml + pw - 170;
        out += "<line x1=\"" + num(lx) + "\" y1=\"" + num(ly - 4) + "\" x2=\"" + num(lx + 24) +
               "\" y2=\"" + num(ly - 4) + "\" stroke=\"" + s.color + "\" stroke-width=\"2\"" +
               (s.dashed ? " stroke-dasharray=\"6 4\"" : "") + "/>\n";
        out += "<text x=\"" + num(lx + 30) + "\" y=\"" + num(ly) + "\" font-size=\"11\">" +
               escape(s.label) + "</text>\n";
        ly += 16;
    }
    out += "</svg>\n";
    return out;
}

}  // namespace sevt::svg
