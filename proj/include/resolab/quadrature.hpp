#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace resolab {

using Point3 = std::array<double, 3>;

/// Nodes and positive weights in 1, 2 or 3 dimensions. Unused trailing
/// coordinates of a node are zero.
struct QuadratureRule {
    int dim = 1;
    std::vector<Point3> nodes;
    std::vector<double> weights;

    std::size_t size() const { return weights.size(); }
    double weight_sum() const;

    /// Sum of w_i f(node_i) in ascending node order.
    template <typename F>
    double integrate(F&& f) const {
        double acc = 0.0;
        for (std::size_t i = 0; i < weights.size(); ++i) {
            acc += weights[i] * f(nodes[i]);
        }
        return acc;
    }
};

/// Uniform midpoint discretization of the unit cube [0,1]^dim.
struct GridSpec {
    int dim = 2;
    int m = 1;

    GridSpec(int dim_, int m_);

    std::size_t size() const;
    double cell_volume() const { return std::pow(static_cast<double>(m), -dim); }
    double spacing() const { return 1.0 / static_cast<double>(m); }
    /// Midpoint of cell `index`, first axis fastest.
    Point3 midpoint(std::size_t index) const;
};

/// Gauss-Legendre rule with k points on [-1, 1], 1 <= k <= 256.
QuadratureRule gauss_legendre(int k);

/// Gauss-Legendre rule mapped to [a, b].
QuadratureRule gauss_legendre(int k, double a, double b);

/// Composite Gauss-Legendre: ceil((b - a) / panel_len) equal panels of k points.
/// Panels and nodes are summed left to right.
template <typename F>
double integrate_interval(F&& f, double a, double b, double panel_len, int k);

/// Same, reusing a precomputed reference rule on [-1, 1].
template <typename F>
double integrate_interval(F&& f, double a, double b, double panel_len, const QuadratureRule& reference);

/// Default accuracy settings for oscillatory Bessel-product integrands.
inline constexpr double default_panel_len = 1.0;
inline constexpr int default_panel_points = 16;

/// Rule on the unit sphere S^{dim_sphere}, dim_sphere in {1, 2}.
/// S^1: `resolution` equispaced angles. S^2: Gauss-Legendre in cos(polar)
/// with `resolution` nodes times 2 * resolution equispaced azimuths.
QuadratureRule sphere_rule(int dim_sphere, int resolution);

/// Sphere rule in the frame whose pole is `pole` (unit vector). The polar
/// angle t, measured from the pole, is discretized directly by Gauss-Legendre,
/// so integrands with |sin t| factors stay smooth in the quadrature variable.
/// S^1 uses two panels [0, pi] and [pi, 2 pi] of `resolution` points each.
QuadratureRule aligned_sphere_rule(int dim_sphere, const Point3& pole, int resolution);

/// Radial parametrization used by ball_rule.
enum class RadialMap {
    linear,  ///< r on [0, R] directly
    sine,    ///< r = R sin(theta), theta on [0, pi/2]; absorbs (R^2 - r^2)^(-1/2) at the rim
};

/// Product rule on the ball of radius `radius` in R^dim (dim in {2, 3}):
/// composite Gauss-Legendre in the radial variable (radial_panels panels of
/// k points) times sphere_rule(dim - 1, angular_resolution). The Jacobian
/// r^(dim-1) is folded into the weights.
QuadratureRule ball_rule(int dim, double radius, int radial_panels, int k, int angular_resolution,
                         RadialMap map = RadialMap::linear);

/// Tensor midpoint rule on [0,1]^dim.
QuadratureRule midpoint_rule(const GridSpec& grid);

// -- implementation ---------------------------------------------------------

template <typename F>
double integrate_interval(F&& f, double a, double b, double panel_len, const QuadratureRule& reference) {
    if (!(a <= b)) {
        throw std::invalid_argument("integrate_interval: require a <= b");
    }
    if (!(panel_len > 0.0)) {
        throw std::invalid_argument("integrate_interval: panel_len must be positive");
    }
    if (a == b) {
        return 0.0;
    }
    const auto panels = static_cast<std::size_t>(std::ceil((b - a) / panel_len));
    const double h = (b - a) / static_cast<double>(panels);
    double total = 0.0;
    for (std::size_t p = 0; p < panels; ++p) {
        const double lo = a + h * static_cast<double>(p);
        const double mid = lo + 0.5 * h;
        double panel = 0.0;
        for (std::size_t i = 0; i < reference.size(); ++i) {
            panel += reference.weights[i] * f(mid + 0.5 * h * reference.nodes[i][0]);
        }
        total += 0.5 * h * panel;
    }
    return total;
}

template <typename F>
double integrate_interval(F&& f, double a, double b, double panel_len, int k) {
    return integrate_interval(std::forward<F>(f), a, b, panel_len, gauss_legendre(k));
}

}  // namespace resolab
