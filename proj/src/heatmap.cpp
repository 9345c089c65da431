#include "ringsim/heatmap.hpp"

#include "ringsim/errors.hpp"
#include "ringsim/io.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <string>

namespace ringsim {

namespace {

struct Rgb {
    int r = 0, g = 0, b = 0;
};

// low -> mid -> high stops of the color scale
const Rgb kLow{44, 123, 182};
const Rgb kMid{255, 255, 191};
const Rgb kHigh{215, 25, 28};

int lerp_channel(int a, int b, double t) {
    const double v = static_cast<double>(a) + (static_cast<double>(b) - a) * t;
    return static_cast<int>(v + 0.5);
}

Rgb colormap(double t) {
    t = std::min(std::max(t, 0.0), 1.0);
    if (t < 0.5) {
        const double u = t * 2.0;
        return Rgb{lerp_channel(kLow.r, kMid.r, u), lerp_channel(kLow.g, kMid.g, u),
                   lerp_channel(kLow.b, kMid.b, u)};
    }
    const double u = (t - 0.5) * 2.0;
    return Rgb{lerp_channel(kMid.r, kHigh.r, u), lerp_channel(kMid.g, kHigh.g, u),
               lerp_channel(kMid.b, kHigh.b, u)};
}

std::string hex_color(const Rgb& c) {
    char buf[8];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", c.r, c.g, c.b);
    return std::string(buf);
}

std::string short_num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", x);
    return std::string(buf);
}

double metric_value(const SweepCell& c, const std::string& metric) {
    if (metric == "mean_var") return c.stats.variance.mean;
    if (metric == "std_var") return c.stats.variance.stddev;
    if (metric == "mean_speed") return c.stats.speed.mean;
    if (metric == "mean_lane_changes") return c.stats.lane_changes.mean;
    throw ConfigError("heatmap: unknown metric '" + metric + "'");
}

} // namespace

std::string render_heatmap_svg(const SweepTable& table, const std::string& metric) {
    const std::size_t n_di = table.di_values.size();
    const std::size_t n_ds = table.ds_values.size();
    if (n_di == 0 || n_ds == 0 || table.cells.size() != n_di * n_ds)
        throw ConfigError("heatmap: table is not a full grid");

    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& c : table.cells) {
        const double v = metric_value(c, metric);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const bool flat = !(hi > lo);

    const int cell_w = 66, cell_h = 44;
    const int left = 74, top = 46, bottom = 56, right = 128;
    const int grid_w = cell_w * static_cast<int>(n_di);
    const int grid_h = cell_h * static_cast<int>(n_ds);
    const int width = left + grid_w + right;
    const int height = top + grid_h + bottom;

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
           std::to_string(width) + "\" height=\"" + std::to_string(height) +
           "\" font-family=\"monospace\" font-size=\"12\">\n";
    svg += "<rect width=\"" + std::to_string(width) + "\" height=\"" +
           std::to_string(height) + "\" fill=\"#ffffff\"/>\n";
    svg += "<text x=\"" + std::to_string(left) + "\" y=\"24\" font-size=\"15\">" +
           metric + "</text>\n";

    for (std::size_t di = 0; di < n_di; ++di) {
        for (std::size_t ds = 0; ds < n_ds; ++ds) {
            const SweepCell& c = table.cells[di * n_ds + ds];
            const double v = metric_value(c, metric);
            const double t = flat ? 0.5 : (v - lo) / (hi - lo);
            const Rgb col = colormap(t);
            const int x = left + static_cast<int>(di) * cell_w;
            // delta_s grows upward: last row index sits at the top
            const int y = top + (static_cast<int>(n_ds) - 1 - static_cast<int>(ds)) * cell_h;
            svg += "<rect x=\"" + std::to_string(x) + "\" y=\"" + std::to_string(y) +
                   "\" width=\"" + std::to_string(cell_w) + "\" height=\"" +
                   std::to_string(cell_h) + "\" fill=\"" + hex_color(col) +
                   "\" stroke=\"#808080\" stroke-width=\"1\"/>\n";
            const int lum = (col.r * 299 + col.g * 587 + col.b * 114) / 1000;
            svg += "<text x=\"" + std::to_string(x + cell_w / 2) + "\" y=\"" +
                   std::to_string(y + cell_h / 2 + 4) +
                   "\" text-anchor=\"middle\" fill=\"" +
                   (lum > 140 ? std::string("#000000") : std::string("#ffffff")) + "\">" +
                   short_num(v) + "</text>\n";
        }
    }

    // axis tick labels
    for (std::size_t di = 0; di < n_di; ++di) {
        const int x = left + static_cast<int>(di) * cell_w + cell_w / 2;
        svg += "<text x=\"" + std::to_string(x) + "\" y=\"" +
               std::to_string(top + grid_h + 18) + "\" text-anchor=\"middle\">" +
               short_num(table.di_values[di]) + "</text>\n";
    }
    for (std::size_t ds = 0; ds < n_ds; ++ds) {
        const int y = top + (static_cast<int>(n_ds) - 1 - static_cast<int>(ds)) * cell_h +
                      cell_h / 2 + 4;
        svg += "<text x=\"" + std::to_string(left - 8) + "\" y=\"" + std::to_string(y) +
               "\" text-anchor=\"end\">" + short_num(table.ds_values[ds]) + "</text>\n";
    }
    svg += "<text x=\"" + std::to_string(left + grid_w / 2) + "\" y=\"" +
           std::to_string(top + grid_h + 40) +
           "\" text-anchor=\"middle\">delta_i</text>\n";
    svg += "<text x=\"18\" y=\"" + std::to_string(top + grid_h / 2) +
           "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
           std::to_string(top + grid_h / 2) + ")\">delta_s</text>\n";

    // color scale: vertical bar, high at the top
    const int bar_x = left + grid_w + 32;
    const int bar_w = 20;
    const int bar_h = std::max(grid_h, 88);
    const int slices = 64;
    for (int s = 0; s < slices; ++s) {
        const double t = 1.0 - (static_cast<double>(s) + 0.5) / slices;
        const int y0 = top + (bar_h * s) / slices;
        const int y1 = top + (bar_h * (s + 1)) / slices;
        svg += "<rect x=\"" + std::to_string(bar_x) + "\" y=\"" + std::to_string(y0) +
               "\" width=\"" + std::to_string(bar_w) + "\" height=\"" +
               std::to_string(y1 - y0) + "\" fill=\"" +
               hex_color(colormap(flat ? 0.5 : t)) + "\"/>\n";
    }
    svg += "<rect x=\"" + std::to_string(bar_x) + "\" y=\"" + std::to_string(top) +
           "\" width=\"" + std::to_string(bar_w) + "\" height=\"" + std::to_string(bar_h) +
           "\" fill=\"none\" stroke=\"#808080\" stroke-width=\"1\"/>\n";
    if (flat) {
        svg += "<text x=\"" + std::to_string(bar_x + bar_w + 6) + "\" y=\"" +
               std::to_string(top + bar_h / 2 + 4) + "\">" + short_num(lo) + "</text>\n";
    } else {
        svg += "<text x=\"" + std::to_string(bar_x + bar_w + 6) + "\" y=\"" +
               std::to_string(top + 10) + "\">" + short_num(hi) + "</text>\n";
        svg += "<text x=\"" + std::to_string(bar_x + bar_w + 6) + "\" y=\"" +
               std::to_string(top + bar_h / 2 + 4) + "\">" +
               short_num(lo + (hi - lo) / 2.0) + "</text>\n";
        svg += "<text x=\"" + std::to_string(bar_x + bar_w + 6) + "\" y=\"" +
               std::to_string(top + bar_h) + "\">" + short_num(lo) + "</text>\n";
    }

    svg += "</svg>\n";
    return svg;
}

} // namespace ringsim
