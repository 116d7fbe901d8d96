#pragma once

#include <string>
#include <utility>
#include <vector>

namespace sevt::svg {

enum class Style { line, points, line_points };

struct Series {
    std::vector<std::pair<double, double>> points;
    std::string label;
    std::string color = "#1f77b4";
    Style style = Style::line;
    bool dashed = false;
    /// Optional vertical error bars: absolute low/high y per point.
    std::vector<double> err_low;
    std::vector<double> err_high;
};

/// Minimal deterministic SVG line/scatter chart; no external plotting
/// dependency. Every figure is accompanied by a plot-data CSV so users can
/// re-render elsewhere.
struct Chart {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<Series> series;

    std::string render(int width = 760, int height = 480) const;
};

}  // namespace sevt::svg
