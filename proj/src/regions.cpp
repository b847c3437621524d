#include "resolab/regions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "resolab/format.hpp"

namespace resolab {

double XTransform::apply(double x) const {
    switch (kind) {
        case TransformKind::log_j:
        case TransformKind::log_kappa: return std::log(x);
        case TransformKind::j_pow: return std::pow(x, power);
    }
    return x;
}

std::string XTransform::name() const {
    switch (kind) {
        case TransformKind::log_j: return "log_j";
        case TransformKind::log_kappa: return "log_kappa";
        case TransformKind::j_pow: {
            std::ostringstream os;
            os << "j_pow(" << power << ")";
            return os.str();
        }
    }
    return "unknown";
}

FitResult fit_loglog(std::span<const XYPoint> points, XTransform transform,
                     std::pair<std::size_t, std::size_t> window) {
    const auto [lo, hi] = window;
    if (lo < 1 || hi > points.size() || lo >= hi) {
        throw std::invalid_argument("fit_loglog: window [" + std::to_string(lo) + ", " + std::to_string(hi) +
                                    "] invalid for " + std::to_string(points.size()) + " points");
    }
    if (hi - lo + 1 < 3) {
        throw std::invalid_argument("fit_loglog: need at least 3 points in the window");
    }
    std::vector<double> xs;
    std::vector<double> ys;
    for (std::size_t i = lo - 1; i < hi; ++i) {
        const auto& p = points[i];
        if (!(p.x > 0.0) || !(p.y > 0.0) || !std::isfinite(p.x) || !std::isfinite(p.y)) {
            throw std::invalid_argument("fit_loglog: point " + std::to_string(i + 1) + " is not positive and finite");
        }
        xs.push_back(transform.apply(p.x));
        ys.push_back(std::log(p.y));
    }
    const double count = static_cast<double>(xs.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= count;
    my /= count;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (!(sxx > 0.0)) {
        throw std::invalid_argument("fit_loglog: degenerate window, all abscissae equal");
    }
    FitResult fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double sse = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
        sse += r * r;
    }
    // A constant y is fitted exactly.
    fit.r_squared = syy > 0.0 ? std::clamp(1.0 - sse / syy, 0.0, 1.0) : 1.0;
    fit.window = window;
    fit.transform = transform;
    return fit;
}

FitResult fit_loglog(std::span<const XYPoint> points, XTransform transform) {
    return fit_loglog(points, transform, {1, points.size()});
}

std::vector<XYPoint> spectrum_points(const SpectrumRecord& spectrum) {
    std::vector<XYPoint> out;
    out.reserve(spectrum.size());
    for (const auto& e : spectrum.entries) {
        out.push_back({static_cast<double>(e.rank), e.sigma});
    }
    return out;
}

KneeResult detect_knee(const SpectrumRecord& spectrum) {
    const std::size_t len = spectrum.size();
    if (len < 20) {
        throw std::invalid_argument("detect_knee: need at least 20 entries, got " + std::to_string(len));
    }
    const std::size_t head = std::max<std::size_t>(5, len / 100);
    std::vector<double> first;
    for (std::size_t i = 0; i < head; ++i) {
        first.push_back(spectrum.entries[i].sigma);
    }
    std::sort(first.begin(), first.end());
    const double median =
        head % 2 == 1 ? first[head / 2] : 0.5 * (first[head / 2 - 1] + first[head / 2]);
    const double threshold = median / std::exp(1.0);

    KneeResult knee;
    knee.plateau = median;
    for (std::size_t i = 0; i < len; ++i) {
        if (spectrum.entries[i].sigma < threshold) {
            knee.index = i + 1;
            return knee;
        }
    }
    knee.index = len;
    knee.crossed = false;
    return knee;
}

double modulus_validity_bound(const ModulusParams& p) {
    return std::min(p.h1 * std::pow(2.0, -p.gamma0), p.h2 * std::exp(-p.mu));
}

double modulus_lower_bound(const ModulusParams& p, double t) {
    const auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
    if (!positive(p.h1) || !positive(p.h2) || !positive(p.mu) || !positive(p.beta) || !positive(p.gamma0)) {
        throw std::domain_error("modulus_lower_bound: h1, h2, mu, beta, gamma0 must be positive");
    }
    if (!(t > 0.0)) {
        throw std::domain_error("modulus_lower_bound: t must be positive");
    }
    if (!(t < p.h1 * std::pow(2.0, -p.gamma0))) {
        throw std::domain_error("modulus_lower_bound: t must be below h1 * 2^-gamma0 = " +
                                format_real(p.h1 * std::pow(2.0, -p.gamma0)));
    }
    if (!(t < p.h2 * std::exp(-p.mu))) {
        throw std::domain_error("modulus_lower_bound: t must be below h2 * e^-mu = " +
                                format_real(p.h2 * std::exp(-p.mu)));
    }
    const double exponent = p.gamma0 / p.beta;
    const double linear = t / p.h1;
    const double logarithmic =
        std::pow(2.0, -p.gamma0) * std::pow(p.mu, exponent) * std::pow(std::log(p.h2) + std::log(1.0 / t), -exponent);
    return std::max(linear, logarithmic);
}

RegionSummary summarize_regions(const SpectrumRecord& spectrum) {
    const std::size_t len = spectrum.size();
    if (len < 50) {
        throw std::invalid_argument("summarize_regions: need at least 50 entries, got " + std::to_string(len));
    }
    RegionSummary out;
    out.knee = detect_knee(spectrum);
    out.plateau_level = out.knee.plateau;
    if (!out.knee.crossed) {
        out.flags.push_back("knee_not_crossed");
    }
    const auto points = spectrum_points(spectrum);
    const std::size_t knee = out.knee.index;

    const std::size_t stable_hi = knee / 2;
    if (stable_hi >= 4) {
        out.stable_fit = fit_loglog(points, {TransformKind::log_j, 1.0}, {2, stable_hi});
    } else {
        out.flags.push_back("stable_window_collapsed");
    }

    const double p = is_herglotz(spectrum.tag) ? 1.0 / (spectrum.dim_n - 1) : 1.0 / (2.0 * spectrum.dim_n);
    const std::size_t tail_lo = 2 * knee;
    const std::size_t tail_hi = std::min(5 * knee, len);
    if (out.knee.crossed && tail_hi >= tail_lo + 2) {
        out.tail_fit = fit_loglog(points, {TransformKind::j_pow, p}, {tail_lo, tail_hi});
    } else {
        out.flags.push_back("tail_window_collapsed");
    }
    return out;
}

}  // namespace resolab
