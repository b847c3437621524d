#include "resolab/quadrature.hpp"

#include <numbers>

namespace resolab {

namespace {

constexpr double pi = std::numbers::pi;

// Orthonormal frame (e1, e2, pole) with `pole` as third axis.
std::array<Point3, 2> complete_frame(const Point3& pole) {
    // Pick the coordinate axis least aligned with the pole.
    Point3 helper{0.0, 0.0, 0.0};
    const double ax = std::abs(pole[0]);
    const double ay = std::abs(pole[1]);
    const double az = std::abs(pole[2]);
    if (ax <= ay && ax <= az) {
        helper[0] = 1.0;
    } else if (ay <= az) {
        helper[1] = 1.0;
    } else {
        helper[2] = 1.0;
    }
    Point3 e1{helper[1] * pole[2] - helper[2] * pole[1],
              helper[2] * pole[0] - helper[0] * pole[2],
              helper[0] * pole[1] - helper[1] * pole[0]};
    const double n1 = std::sqrt(e1[0] * e1[0] + e1[1] * e1[1] + e1[2] * e1[2]);
    for (double& c : e1) {
        c /= n1;
    }
    const Point3 e2{pole[1] * e1[2] - pole[2] * e1[1],
                    pole[2] * e1[0] - pole[0] * e1[2],
                    pole[0] * e1[1] - pole[1] * e1[0]};
    return {e1, e2};
}

void require_resolution(int resolution) {
    if (resolution < 4) {
        throw std::invalid_argument("sphere rule: resolution must be at least 4");
    }
}

}  // namespace

double QuadratureRule::weight_sum() const {
    double acc = 0.0;
    for (double w : weights) {
        acc += w;
    }
    return acc;
}

GridSpec::GridSpec(int dim_, int m_) : dim(dim_), m(m_) {
    if (dim != 2 && dim != 3) {
        throw std::invalid_argument("GridSpec: dim must be 2 or 3");
    }
    if (m < 1) {
        throw std::invalid_argument("GridSpec: m must be positive");
    }
}

std::size_t GridSpec::size() const {
    std::size_t n = 1;
    for (int d = 0; d < dim; ++d) {
        n *= static_cast<std::size_t>(m);
    }
    return n;
}

Point3 GridSpec::midpoint(std::size_t index) const {
    Point3 p{0.0, 0.0, 0.0};
    const auto mm = static_cast<std::size_t>(m);
    for (int d = 0; d < dim; ++d) {
        p[static_cast<std::size_t>(d)] = (static_cast<double>(index % mm) + 0.5) / static_cast<double>(m);
        index /= mm;
    }
    return p;
}

QuadratureRule gauss_legendre(int k) {
    if (k < 1 || k > 256) {
        throw std::invalid_argument("gauss_legendre: k must be in [1, 256]");
    }
    QuadratureRule rule;
    rule.dim = 1;
    rule.nodes.assign(static_cast<std::size_t>(k), Point3{0.0, 0.0, 0.0});
    rule.weights.assign(static_cast<std::size_t>(k), 0.0);

    const int half = (k + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Tricomi initial guess, then Newton on P_k.
        double z = std::cos(pi * (i + 0.75) / (k + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = z;
            for (int j = 2; j <= k; ++j) {
                const double p2 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            // p1 = P_k(z), p0 = P_{k-1}(z)
            dp = k * (z * p1 - p0) / (z * z - 1.0);
            const double step = p1 / dp;
            z -= step;
            if (std::abs(step) <= 1e-16) {
                break;
            }
        }
        // Recompute the derivative at the converged root for the weight.
        double p0 = 1.0;
        double p1 = z;
        for (int j = 2; j <= k; ++j) {
            const double p2 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p0) / j;
            p0 = p1;
            p1 = p2;
        }
        dp = k * (z * p1 - p0) / (z * z - 1.0);
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        const auto lo = static_cast<std::size_t>(i);
        const auto hi = static_cast<std::size_t>(k - 1 - i);
        rule.nodes[lo][0] = -z;
        rule.nodes[hi][0] = z;
        rule.weights[lo] = w;
        rule.weights[hi] = w;
    }
    if (k % 2 == 1) {
        rule.nodes[static_cast<std::size_t>(k / 2)][0] = 0.0;
    }
    return rule;
}

QuadratureRule gauss_legendre(int k, double a, double b) {
    QuadratureRule rule = gauss_legendre(k);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    for (std::size_t i = 0; i < rule.size(); ++i) {
        rule.nodes[i][0] = mid + half * rule.nodes[i][0];
        rule.weights[i] *= half;
    }
    return rule;
}

QuadratureRule sphere_rule(int dim_sphere, int resolution) {
    require_resolution(resolution);
    QuadratureRule rule;
    if (dim_sphere == 1) {
        rule.dim = 2;
        const double w = 2.0 * pi / resolution;
        for (int i = 0; i < resolution; ++i) {
            const double phi = w * i;
            rule.nodes.push_back({std::cos(phi), std::sin(phi), 0.0});
            rule.weights.push_back(w);
        }
        return rule;
    }
    if (dim_sphere == 2) {
        rule.dim = 3;
        const QuadratureRule polar = gauss_legendre(resolution);
        const int azimuths = 2 * resolution;
        const double dphi = 2.0 * pi / azimuths;
        for (std::size_t i = 0; i < polar.size(); ++i) {
            const double c = polar.nodes[i][0];
            const double s = std::sqrt(1.0 - c * c);
            for (int j = 0; j < azimuths; ++j) {
                const double phi = dphi * j;
                rule.nodes.push_back({s * std::cos(phi), s * std::sin(phi), c});
                rule.weights.push_back(polar.weights[i] * dphi);
            }
        }
        return rule;
    }
    throw std::invalid_argument("sphere_rule: dim_sphere must be 1 or 2");
}

QuadratureRule aligned_sphere_rule(int dim_sphere, const Point3& pole, int resolution) {
    require_resolution(resolution);
    QuadratureRule rule;
    if (dim_sphere == 1) {
        rule.dim = 2;
        // Tangent direction for a positively oriented circle.
        const double tx = -pole[1];
        const double ty = pole[0];
        for (const auto& [lo, hi] : {std::pair{0.0, pi}, std::pair{pi, 2.0 * pi}}) {
            const QuadratureRule panel = gauss_legendre(resolution, lo, hi);
            for (std::size_t i = 0; i < panel.size(); ++i) {
                const double t = panel.nodes[i][0];
                const double c = std::cos(t);
                const double s = std::sin(t);
                rule.nodes.push_back({c * pole[0] + s * tx, c * pole[1] + s * ty, 0.0});
                rule.weights.push_back(panel.weights[i]);
            }
        }
        return rule;
    }
    if (dim_sphere == 2) {
        rule.dim = 3;
        const auto [e1, e2] = complete_frame(pole);
        const QuadratureRule polar = gauss_legendre(resolution, 0.0, pi);
        const int azimuths = 2 * resolution;
        const double dphi = 2.0 * pi / azimuths;
        for (std::size_t i = 0; i < polar.size(); ++i) {
            const double t = polar.nodes[i][0];
            const double c = std::cos(t);
            const double s = std::sin(t);
            for (int j = 0; j < azimuths; ++j) {
                const double phi = dphi * j;
                const double a = s * std::cos(phi);
                const double b = s * std::sin(phi);
                rule.nodes.push_back({a * e1[0] + b * e2[0] + c * pole[0],
                                      a * e1[1] + b * e2[1] + c * pole[1],
                                      a * e1[2] + b * e2[2] + c * pole[2]});
                rule.weights.push_back(polar.weights[i] * s * dphi);
            }
        }
        return rule;
    }
    throw std::invalid_argument("aligned_sphere_rule: dim_sphere must be 1 or 2");
}

QuadratureRule ball_rule(int dim, double radius, int radial_panels, int k, int angular_resolution,
                         RadialMap map) {
    if (dim != 2 && dim != 3) {
        throw std::invalid_argument("ball_rule: dim must be 2 or 3");
    }
    if (!(radius > 0.0)) {
        throw std::invalid_argument("ball_rule: radius must be positive");
    }
    if (radial_panels < 4) {
        throw std::invalid_argument("ball_rule: radial_panels must be at least 4");
    }
    const QuadratureRule reference = gauss_legendre(k);
    const QuadratureRule directions = sphere_rule(dim - 1, angular_resolution);

    // Radial nodes and weights including the Jacobian r^(dim-1).
    std::vector<double> radii;
    std::vector<double> radial_weights;
    const double upper = (map == RadialMap::linear) ? radius : 0.5 * pi;
    const double h = upper / radial_panels;
    for (int p = 0; p < radial_panels; ++p) {
        const double mid = h * (p + 0.5);
        for (std::size_t i = 0; i < reference.size(); ++i) {
            const double s = mid + 0.5 * h * reference.nodes[i][0];
            double w = 0.5 * h * reference.weights[i];
            double r = s;
            if (map == RadialMap::sine) {
                r = radius * std::sin(s);
                w *= radius * std::cos(s);
            }
            radii.push_back(r);
            radial_weights.push_back(w * std::pow(r, dim - 1));
        }
    }

    QuadratureRule rule;
    rule.dim = dim;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        for (std::size_t j = 0; j < directions.size(); ++j) {
            const Point3& d = directions.nodes[j];
            rule.nodes.push_back({radii[i] * d[0], radii[i] * d[1], radii[i] * d[2]});
            rule.weights.push_back(radial_weights[i] * directions.weights[j]);
        }
    }
    return rule;
}

QuadratureRule midpoint_rule(const GridSpec& grid) {
    QuadratureRule rule;
    rule.dim = grid.dim;
    const std::size_t n = grid.size();
    rule.nodes.reserve(n);
    rule.weights.assign(n, grid.cell_volume());
    for (std::size_t i = 0; i < n; ++i) {
        rule.nodes.push_back(grid.midpoint(i));
    }
    return rule;
}

}  // namespace resolab
