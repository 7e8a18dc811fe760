#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sisar/batch.hpp"
#include "sisar/svg.hpp"

namespace sisar {

// Double histogram over a batch: epidemic duration on x, total symptomatic +
// asymptomatic + deceased on y, one cell count per bin pair; rendered with a
// logarithmic color scale.
struct HeatGrid {
    double x_lo = 0.0, x_hi = 1.0;
    double y_lo = 0.0, y_hi = 1.0;
    int nx = 40, ny = 40;
    std::vector<long> counts;  // row-major, y major

    long& at(int ix, int iy) { return counts[static_cast<std::size_t>(iy * nx + ix)]; }
    long at(int ix, int iy) const { return counts[static_cast<std::size_t>(iy * nx + ix)]; }

    int x_bin(double x) const {
        const int i = static_cast<int>((x - x_lo) / (x_hi - x_lo) * nx);
        return std::clamp(i, 0, nx - 1);
    }
    int y_bin(double y) const {
        const int i = static_cast<int>((y - y_lo) / (y_hi - y_lo) * ny);
        return std::clamp(i, 0, ny - 1);
    }

    std::string csv() const {
        std::ostringstream out;
        out << "x_low,y_low,count\n";
        char buf[64];
        for (int iy = 0; iy < ny; ++iy)
            for (int ix = 0; ix < nx; ++ix) {
                std::snprintf(buf, sizeof(buf), "%.4f,%.4f,%ld",
                              x_lo + (x_hi - x_lo) * ix / nx,
                              y_lo + (y_hi - y_lo) * iy / ny, at(ix, iy));
                out << buf << "\n";
            }
        return out.str();
    }
};

inline HeatGrid build_heat_grid(const std::vector<double>& durations,
                                const std::vector<double>& totals, int nx = 40,
                                int ny = 40) {
    if (nx < 1 || ny < 1) throw std::invalid_argument("heat grid: bin counts must be positive");
    if (durations.empty() || durations.size() != totals.size())
        throw std::invalid_argument("heat grid: empty or mismatched inputs");
    HeatGrid g;
    g.nx = nx;
    g.ny = ny;
    auto span = [](const std::vector<double>& v, double& lo, double& hi) {
        lo = *std::min_element(v.begin(), v.end());
        hi = *std::max_element(v.begin(), v.end());
        const double margin = 0.05 * std::max(1.0, hi - lo);
        lo -= margin;
        hi += margin;
    };
    span(durations, g.x_lo, g.x_hi);
    span(totals, g.y_lo, g.y_hi);
    g.counts.assign(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny), 0);
    for (std::size_t i = 0; i < durations.size(); ++i)
        ++g.at(g.x_bin(durations[i]), g.y_bin(totals[i]));
    return g;
}

inline HeatGrid heat_grid_of_batch(const BatchRecord& batch, int nx = 40, int ny = 40) {
    std::vector<double> dur, tot;
    for (const auto& r : batch.runs) {
        dur.push_back(static_cast<double>(r.duration));
        tot.push_back(static_cast<double>(r.cum_total));
    }
    return build_heat_grid(dur, tot, nx, ny);
}

inline std::string emit_heatmap_svg(const HeatGrid& g, const std::string& title = "") {
    const double cell = 16.0;
    const double margin = 50.0;
    const double width = 2 * margin + cell * g.nx;
    const double height = 2 * margin + cell * g.ny;
    SvgWriter svg(width, height);
    long max_count = 1;
    for (long c : g.counts) max_count = std::max(max_count, c);
    const double log_max = std::log10(static_cast<double>(max_count) + 1.0);
    for (int iy = 0; iy < g.ny; ++iy)
        for (int ix = 0; ix < g.nx; ++ix) {
            const long c = g.at(ix, iy);
            const double x = margin + cell * ix;
            const double y = height - margin - cell * (iy + 1);
            if (c == 0) {
                svg.rect(x, y, cell, cell, "#f4f4f4", "cell");
                continue;
            }
            const double v = std::log10(static_cast<double>(c) + 1.0) / log_max;
            // white -> warm red ramp
            const int r = 255;
            const int gb = static_cast<int>(235.0 * (1.0 - v));
            char color[16];
            std::snprintf(color, sizeof(color), "#%02x%02x%02x", r, gb, gb);
            svg.rect(x, y, cell, cell, color, "cell");
            svg.text(x + cell / 2, y + cell / 2 + 3.0, std::to_string(c), 7.0, "black",
                     "middle");
        }
    // axis labels: min and max of both ranges
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.0f", g.x_lo);
    svg.text(margin, height - margin + 16, buf, 10.0);
    std::snprintf(buf, sizeof(buf), "%.0f", g.x_hi);
    svg.text(margin + cell * g.nx, height - margin + 16, buf, 10.0, "black", "end");
    std::snprintf(buf, sizeof(buf), "%.0f", g.y_lo);
    svg.text(margin - 6, height - margin, buf, 10.0, "black", "end");
    std::snprintf(buf, sizeof(buf), "%.0f", g.y_hi);
    svg.text(margin - 6, margin + 10, buf, 10.0, "black", "end");
    svg.text(margin, margin - 14, title.empty() ? "duration vs total infected" : title, 11.0);
    return svg.finish();
}

}  // namespace sisar
