#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "resolab/spectrum.hpp"

namespace resolab {

enum class TransformKind { log_j, j_pow, log_kappa };

/// Abscissa transform of a fit: log x, x^p, or log x labelled as kappa.
struct XTransform {
    TransformKind kind = TransformKind::log_j;
    double power = 1.0;  ///< used by j_pow only

    double apply(double x) const;
    std::string name() const;  ///< "log_j", "j_pow(0.5)", "log_kappa"
};

/// Least-squares line through (transform(x), log y).
struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::pair<std::size_t, std::size_t> window{0, 0};  ///< 1-based, inclusive
    XTransform transform;
};

struct XYPoint {
    double x = 0.0;
    double y = 0.0;
};

/// Fits points[window.first - 1 .. window.second - 1]. Needs at least three
/// points, all coordinates positive, and not all transformed x equal.
/// Throws std::invalid_argument otherwise.
FitResult fit_loglog(std::span<const XYPoint> points, XTransform transform,
                     std::pair<std::size_t, std::size_t> window);

/// Whole-sequence convenience overload.
FitResult fit_loglog(std::span<const XYPoint> points, XTransform transform);

/// (rank, sigma) pairs of a spectrum.
std::vector<XYPoint> spectrum_points(const SpectrumRecord& spectrum);

struct KneeResult {
    std::size_t index = 0;  ///< 1-based
    double plateau = 0.0;
    bool crossed = true;  ///< false: the threshold is never reached, index is the last rank
};

/// Smallest j with sigma_j < plateau / e, plateau = median of the first
/// max(5, len / 100) values. Needs at least 20 entries.
KneeResult detect_knee(const SpectrumRecord& spectrum);

/// Parameters of the instability-modulus lower bound.
struct ModulusParams {
    double h1 = 1.0;
    double h2 = 1.0;
    double mu = 1.0;
    double beta = 1.0;
    double gamma0 = 1.0;
};

/// Upper end of the admissible t range: min(h1 2^{-gamma0}, h2 e^{-mu}).
double modulus_validity_bound(const ModulusParams& params);

/// max{t / h1, 2^{-gamma0} mu^{gamma0/beta} (log h2 + log(1/t))^{-gamma0/beta}}.
/// Throws std::domain_error for parameters out of range or t outside the window.
double modulus_lower_bound(const ModulusParams& params, double t);

struct RegionSummary {
    double plateau_level = 0.0;
    KneeResult knee;
    std::optional<FitResult> stable_fit;
    std::optional<FitResult> tail_fit;
    std::vector<std::string> flags;
};

/// Knee, stable-region log-log fit over [2, knee/2] and tail fit of log sigma
/// against j^p over [2 knee, min(5 knee, len)], p = 1/(n-1) for Herglotz
/// spectra and 1/(2n) for far-field spectra. Collapsed windows leave the fit
/// empty and add a flag. Needs at least 50 entries.
RegionSummary summarize_regions(const SpectrumRecord& spectrum);

}  // namespace resolab
