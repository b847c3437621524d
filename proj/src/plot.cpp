#include "resolab/plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace resolab {

namespace {

constexpr std::array<const char*, 8> palette{"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                             "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string escape(const std::string& s) {
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

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

struct Axis {
    bool log = false;
    double lo = 0.0;  // in transformed units
    double hi = 1.0;
    double pixel_lo = 0.0;
    double pixel_hi = 1.0;

    double transform(double v) const { return log ? std::log10(v) : v; }
    double to_pixel(double v) const {
        return pixel_lo + (transform(v) - lo) / (hi - lo) * (pixel_hi - pixel_lo);
    }

    std::vector<double> ticks() const {
        std::vector<double> out;
        if (log) {
            for (double k = std::ceil(lo - 1e-9); k <= hi + 1e-9; k += 1.0) {
                out.push_back(std::pow(10.0, k));
            }
            return out;
        }
        const double span = hi - lo;
        const double raw = span / 5.0;
        const double mag = std::pow(10.0, std::floor(std::log10(raw)));
        double step = mag;
        for (double f : {1.0, 2.0, 5.0, 10.0}) {
            if (raw <= f * mag) {
                step = f * mag;
                break;
            }
        }
        for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * span; t += step) {
            out.push_back(std::abs(t) < 1e-12 * span ? 0.0 : t);
        }
        return out;
    }
};

// Range in transformed units, widened to whole decades on log axes.
void fit_range(Axis& axis, double min_v, double max_v) {
    double lo = axis.transform(min_v);
    double hi = axis.transform(max_v);
    if (axis.log) {
        lo = std::floor(lo);
        hi = std::ceil(hi);
    }
    if (hi - lo <= 0.0) {
        const double pad = axis.log ? 1.0 : std::max(1.0, std::abs(lo) * 0.1);
        lo -= pad;
        hi += pad;
    }
    axis.lo = lo;
    axis.hi = hi;
}

}  // namespace

std::string render_svg(const std::vector<PlotSeries>& series, const PlotOptions& options) {
    if (series.empty()) {
        throw std::invalid_argument("render_svg: no series to plot");
    }
    std::vector<std::vector<XYPoint>> drawable;
    double xmin = std::numeric_limits<double>::infinity();
    double xmax = -xmin;
    double ymin = xmin;
    double ymax = -xmin;
    for (const auto& s : series) {
        std::vector<XYPoint> pts;
        for (const auto& p : s.points) {
            if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
                continue;
            }
            if ((options.logx && p.x <= 0.0) || (options.logy && p.y <= 0.0)) {
                continue;
            }
            pts.push_back(p);
            xmin = std::min(xmin, p.x);
            xmax = std::max(xmax, p.x);
            ymin = std::min(ymin, p.y);
            ymax = std::max(ymax, p.y);
        }
        if (pts.empty()) {
            throw std::invalid_argument("render_svg: series '" + s.name + "' has no drawable points");
        }
        drawable.push_back(std::move(pts));
    }

    const double left = 80.0;
    const double right = 170.0;
    const double top = 40.0;
    const double bottom = 60.0;
    const double w = options.width;
    const double h = options.height;
    Axis ax{options.logx, 0, 1, left, w - right};
    Axis ay{options.logy, 0, 1, h - bottom, top};
    fit_range(ax, xmin, xmax);
    fit_range(ay, ymin, ymax);

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << options.width << "\" height=\""
        << options.height << "\" viewBox=\"0 0 " << options.width << ' ' << options.height << "\">\n"
        << "<rect x=\"0\" y=\"0\" width=\"" << options.width << "\" height=\"" << options.height
        << "\" fill=\"white\"/>\n"
        << "<defs><clipPath id=\"plot-area\"><rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\""
        << num(w - left - right) << "\" height=\"" << num(h - top - bottom) << "\"/></clipPath></defs>\n";
    if (!options.title.empty()) {
        svg << "<text x=\"" << num(0.5 * (left + w - right)) << "\" y=\"24\" text-anchor=\"middle\" "
            << "font-family=\"sans-serif\" font-size=\"15\">" << escape(options.title) << "</text>\n";
    }

    // Frame, ticks and labels.
    svg << "<g class=\"axes\" stroke=\"black\" fill=\"none\">\n"
        << "<rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\"" << num(w - left - right)
        << "\" height=\"" << num(h - top - bottom) << "\"/>\n";
    for (double t : ax.ticks()) {
        const double px = ax.to_pixel(t);
        svg << "<line class=\"xtick\" x1=\"" << num(px) << "\" y1=\"" << num(h - bottom) << "\" x2=\"" << num(px)
            << "\" y2=\"" << num(h - bottom + 6) << "\"/>\n";
    }
    for (double t : ay.ticks()) {
        const double py = ay.to_pixel(t);
        svg << "<line class=\"ytick\" x1=\"" << num(left - 6) << "\" y1=\"" << num(py) << "\" x2=\"" << num(left)
            << "\" y2=\"" << num(py) << "\"/>\n";
    }
    svg << "</g>\n<g font-family=\"sans-serif\" font-size=\"12\" fill=\"black\">\n";
    for (double t : ax.ticks()) {
        svg << "<text x=\"" << num(ax.to_pixel(t)) << "\" y=\"" << num(h - bottom + 20)
            << "\" text-anchor=\"middle\">" << tick_label(t) << "</text>\n";
    }
    for (double t : ay.ticks()) {
        svg << "<text x=\"" << num(left - 10) << "\" y=\"" << num(ay.to_pixel(t) + 4)
            << "\" text-anchor=\"end\">" << tick_label(t) << "</text>\n";
    }
    svg << "<text x=\"" << num(0.5 * (left + w - right)) << "\" y=\"" << num(h - 15)
        << "\" text-anchor=\"middle\">" << escape(options.xlabel) << "</text>\n"
        << "<text x=\"20\" y=\"" << num(0.5 * (top + h - bottom)) << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
        << num(0.5 * (top + h - bottom)) << ")\">" << escape(options.ylabel) << "</text>\n"
        << "</g>\n";

    // Data.
    svg << "<g clip-path=\"url(#plot-area)\" fill=\"none\" stroke-width=\"1.5\">\n";
    for (std::size_t s = 0; s < drawable.size(); ++s) {
        svg << "<polyline class=\"series\" stroke=\"" << palette[s % palette.size()] << "\" points=\"";
        for (std::size_t i = 0; i < drawable[s].size(); ++i) {
            svg << (i ? " " : "") << num(ax.to_pixel(drawable[s][i].x)) << ',' << num(ay.to_pixel(drawable[s][i].y));
        }
        svg << "\"/>\n";
    }
    if (options.reference) {
        const XYPoint a = options.reference->anchor.value_or(drawable.front().front());
        const double slope = options.reference->slope;
        const auto y_at = [&](double x) {
            if (options.logx && options.logy) {
                return a.y * std::pow(x / a.x, slope);
            }
            if (options.logy) {
                return a.y * std::exp(slope * (x - a.x));
            }
            if (options.logx) {
                return a.y + slope * std::log(x / a.x);
            }
            return a.y + slope * (x - a.x);
        };
        const double x0 = options.logx ? std::pow(10.0, ax.lo) : ax.lo;
        const double x1 = options.logx ? std::pow(10.0, ax.hi) : ax.hi;
        const double y0 = y_at(x0);
        const double y1 = y_at(x1);
        if (std::isfinite(y0) && std::isfinite(y1) && (!options.logy || (y0 > 0.0 && y1 > 0.0))) {
            svg << "<line class=\"reference\" stroke=\"#555555\" stroke-dasharray=\"2,4\" x1=\"" << num(ax.to_pixel(x0))
                << "\" y1=\"" << num(ay.to_pixel(y0)) << "\" x2=\"" << num(ax.to_pixel(x1)) << "\" y2=\""
                << num(ay.to_pixel(y1)) << "\"/>\n";
        }
    }
    svg << "</g>\n";

    // Legend.
    svg << "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"12\">\n";
    for (std::size_t s = 0; s < series.size(); ++s) {
        const double y = top + 10 + 20.0 * static_cast<double>(s);
        svg << "<line x1=\"" << num(w - right + 12) << "\" y1=\"" << num(y) << "\" x2=\"" << num(w - right + 36)
            << "\" y2=\"" << num(y) << "\" stroke=\"" << palette[s % palette.size()] << "\" stroke-width=\"2\"/>\n"
            << "<text x=\"" << num(w - right + 42) << "\" y=\"" << num(y + 4) << "\">" << escape(series[s].name)
            << "</text>\n";
    }
    if (options.reference) {
        const double y = top + 10 + 20.0 * static_cast<double>(series.size());
        char label[64];
        std::snprintf(label, sizeof label, "slope %g", options.reference->slope);
        svg << "<line x1=\"" << num(w - right + 12) << "\" y1=\"" << num(y) << "\" x2=\"" << num(w - right + 36)
            << "\" y2=\"" << num(y) << "\" stroke=\"#555555\" stroke-dasharray=\"2,4\"/>\n"
            << "<text x=\"" << num(w - right + 42) << "\" y=\"" << num(y + 4) << "\">" << label << "</text>\n";
    }
    svg << "</g>\n</svg>\n";
    return svg.str();
}

}  // namespace resolab
