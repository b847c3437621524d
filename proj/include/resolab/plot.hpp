#pragma once

#include <optional>
#include <string>
#include <vector>

#include "resolab/regions.hpp"

namespace resolab {

struct PlotSeries {
    std::string name;
    std::vector<XYPoint> points;
};

/// Straight guide line through `anchor` (defaults to the first point of the
/// first series). On log-log axes it is y = y0 (x / x0)^slope.
struct ReferenceLine {
    double slope = 0.0;
    std::optional<XYPoint> anchor;
};

struct PlotOptions {
    bool logx = false;
    bool logy = false;
    std::string title;
    std::string xlabel = "j";
    std::string ylabel = "sigma";
    std::optional<ReferenceLine> reference;
    int width = 720;
    int height = 480;
};

/// Standalone SVG 1.1 document: one polyline per series, ticks at decades
/// on log axes, legend from the series names. Points that cannot be shown
/// on a log axis are skipped. Throws std::invalid_argument when a series
/// has no drawable point.
std::string render_svg(const std::vector<PlotSeries>& series, const PlotOptions& options);

}  // namespace resolab
