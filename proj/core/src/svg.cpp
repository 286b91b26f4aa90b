#include "prism/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "prism/csv.hpp"

namespace prism::io {

namespace {

const char* kPalette[] = {"#3465a4", "#cc0000", "#4e9a06", "#f57900", "#75507b", "#c17d11"};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

std::string escape_xml(const std::string& s) {
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

struct Range {
    double lo = 0, hi = 1;
};

Range padded_range(double lo, double hi) {
    if (!(hi > lo)) {
        const double pad = (lo == 0) ? 1.0 : std::abs(lo) * 0.1;
        return {lo - pad, hi + pad};
    }
    const double pad = (hi - lo) * 0.06;
    return {lo - pad, hi + pad};
}

}  // namespace

std::string render_chart(const std::string& title, const std::string& x_label,
                         const std::string& y_label, const std::vector<Series>& series,
                         int width, int height) {
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : series)
        for (const auto& [x, y] : s.points) {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    if (!std::isfinite(xmin)) {
        xmin = 0; xmax = 1; ymin = 0; ymax = 1;
    }
    const Range xr = padded_range(xmin, xmax);
    const Range yr = padded_range(ymin, ymax);

    const double ml = 70, mr = 20, mt = 40, mb = 55;  // margins
    const double pw = width - ml - mr, ph = height - mt - mb;
    const auto px = [&](double x) { return ml + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
    const auto py = [&](double y) { return mt + ph - (y - yr.lo) / (yr.hi - yr.lo) * ph; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    svg << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
        << escape_xml(title) << "</text>\n";

    // axes
    svg << "<line x1=\"" << ml << "\" y1=\"" << mt + ph << "\" x2=\"" << ml + pw << "\" y2=\""
        << mt + ph << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << mt + ph
        << "\" stroke=\"black\"/>\n";

    constexpr int kTicks = 5;
    for (int i = 0; i <= kTicks; ++i) {
        const double fx = xr.lo + (xr.hi - xr.lo) * i / kTicks;
        const double fy = yr.lo + (yr.hi - yr.lo) * i / kTicks;
        const double tx = px(fx), ty = py(fy);
        svg << "<line x1=\"" << tx << "\" y1=\"" << mt + ph << "\" x2=\"" << tx << "\" y2=\""
            << mt + ph + 5 << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << tx << "\" y=\"" << mt + ph + 18
            << "\" text-anchor=\"middle\">" << fmt(fx) << "</text>\n";
        svg << "<line x1=\"" << ml - 5 << "\" y1=\"" << ty << "\" x2=\"" << ml << "\" y2=\""
            << ty << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << ml - 8 << "\" y=\"" << ty + 4
            << "\" text-anchor=\"end\">" << fmt(fy) << "</text>\n";
    }
    svg << "<text x=\"" << ml + pw / 2 << "\" y=\"" << height - 12
        << "\" text-anchor=\"middle\">" << escape_xml(x_label) << "</text>\n";
    svg << "<text x=\"18\" y=\"" << mt + ph / 2
        << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " << mt + ph / 2 << ")\">"
        << escape_xml(y_label) << "</text>\n";

    for (size_t s = 0; s < series.size(); ++s) {
        const char* color = kPalette[s % 6];
        if (series[s].draw_line && series[s].points.size() > 1) {
            svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
            for (const auto& [x, y] : series[s].points) svg << px(x) << ',' << py(y) << ' ';
            svg << "\"/>\n";
        }
        for (const auto& [x, y] : series[s].points)
            svg << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y)
                << "\" r=\"3\" fill=\"" << color << "\" fill-opacity=\"0.8\"/>\n";
    }

    // legend, top right of the plot area
    double ly = mt + 8;
    for (size_t s = 0; s < series.size(); ++s) {
        if (series[s].label.empty()) continue;
        const char* color = kPalette[s % 6];
        svg << "<rect x=\"" << ml + pw - 150 << "\" y=\"" << ly - 9
            << "\" width=\"12\" height=\"12\" fill=\"" << color << "\"/>\n";
        svg << "<text x=\"" << ml + pw - 133 << "\" y=\"" << ly + 2 << "\">"
            << escape_xml(series[s].label) << "</text>\n";
        ly += 18;
    }
    svg << "</svg>\n";
    return svg.str();
}

void write_chart_svg(const std::string& path, const std::string& title,
                     const std::string& x_label, const std::string& y_label,
                     const std::vector<Series>& series, int width, int height) {
    atomic_write_text(path, render_chart(title, x_label, y_label, series, width, height));
}

}  // namespace prism::io
