#pragma once

#include <string>
#include <utility>
#include <vector>

namespace prism::io {

struct Series {
    std::string label;
    std::vector<std::pair<double, double>> points;
    bool draw_line = true;  // false: scatter only
};

/// Minimal self-contained SVG chart: axes, ticks, legend, fixed palette.
/// Deterministic output for identical input.
std::string render_chart(const std::string& title, const std::string& x_label,
                         const std::string& y_label, const std::vector<Series>& series,
                         int width = 720, int height = 480);

void write_chart_svg(const std::string& path, const std::string& title,
                     const std::string& x_label, const std::string& y_label,
                     const std::vector<Series>& series, int width = 720, int height = 480);

}  // namespace prism::io
