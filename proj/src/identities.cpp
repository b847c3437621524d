#include "resolab/identities.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "resolab/bessel.hpp"
#include "resolab/format.hpp"
#include "resolab/herglotz.hpp"
#include "resolab/linalg.hpp"
#include "resolab/quadrature.hpp"

namespace resolab {

namespace {

constexpr double pi = std::numbers::pi;

void require_dim(int dim_n) {
    if (dim_n != 2 && dim_n != 3) {
        throw std::invalid_argument("unsupported dimension n = " + std::to_string(dim_n) + " (need 2 or 3)");
    }
}

Point3 rotate(const Rotation& r, const Point3& x) {
    return {r[0] * x[0] + r[1] * x[1] + r[2] * x[2], r[3] * x[0] + r[4] * x[1] + r[5] * x[2],
            r[6] * x[0] + r[7] * x[1] + r[8] * x[2]};
}

double norm(const Point3& x) { return std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]); }

// Double sphere integral of f(|z - x|) * (|sin angle(z, x)| if with_sine).
double double_sphere_integral(int dim_n, const RadialProfile& f, bool with_sine, int resolution,
                              const std::optional<Rotation>& rotation) {
    const QuadratureRule outer = sphere_rule(dim_n - 1, resolution);
    double total = 0.0;
    for (std::size_t i = 0; i < outer.size(); ++i) {
        Point3 x = outer.nodes[i];
        if (rotation) {
            x = rotate(*rotation, x);
            if (dim_n == 2) {
                x[2] = 0.0;
            }
        }
        const QuadratureRule inner = aligned_sphere_rule(dim_n - 1, x, resolution);
        const double value = inner.integrate([&](const Point3& z) {
            const double dot = z[0] * x[0] + z[1] * x[1] + z[2] * x[2];
            const double d = norm({z[0] - x[0], z[1] - x[1], z[2] - x[2]});
            const double w = with_sine ? std::sqrt(std::max(0.0, 1.0 - dot * dot)) : 1.0;
            return f(d) * w;
        });
        total += outer.weights[i] * value;
    }
    return total;
}

// Integral over the ball of radius `radius` of f(|y|) * weight(|y|).
double radial_ball_integral(int dim_n, double radius, const std::function<double(double)>& integrand,
                            RadialMap map, int resolution) {
    const QuadratureRule ball = ball_rule(dim_n, radius, std::max(4, resolution / 4), default_panel_points, 4, map);
    return ball.integrate([&](const Point3& y) { return integrand(norm(y)); });
}

}  // namespace

std::string_view to_string(IdentityName name) {
    switch (name) {
        case IdentityName::coarea1: return "coarea1";
        case IdentityName::coarea2: return "coarea2";
        case IdentityName::hs_norm: return "hs_norm";
        case IdentityName::determinant: return "determinant";
        case IdentityName::ah_limit: return "ah_limit";
        case IdentityName::cross_check: return "cross_check";
    }
    return "unknown";
}

double relative_difference(double lhs, double rhs) {
    const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
    return std::abs(lhs - rhs) / scale;
}

IdentityReport make_report(IdentityName name, double lhs, double rhs) {
    IdentityReport r;
    r.name = name;
    r.lhs = lhs;
    r.rhs = rhs;
    r.rel_diff = relative_difference(lhs, rhs);
    return r;
}

double coarea_constant(int dim_n, int which) {
    require_dim(dim_n);
    if (which != 1 && which != 2) {
        throw std::invalid_argument("coarea: which must be 1 or 2");
    }
    const double power = std::pow(2.0, (which == 1 ? 3 : 4) - dim_n);
    return power * std::pow(pi, 0.5 * (dim_n - 1)) / gamma_half_integer(static_cast<std::uint32_t>(dim_n - 1));
}

IdentityReport check_coarea(int dim_n, int which, const RadialProfile& h, int resolution,
                            const std::optional<Rotation>& rotation) {
    const double c = coarea_constant(dim_n, which);
    const double lhs = double_sphere_integral(dim_n, h, which == 1, resolution, rotation);

    double rhs = 0.0;
    if (which == 1) {
        // weight (4 - r^2)^{(n-2)/2}
        if (dim_n == 2) {
            rhs = radial_ball_integral(dim_n, 2.0, [&](double r) { return h(r); }, RadialMap::linear, resolution);
        } else {
            rhs = radial_ball_integral(
                dim_n, 2.0, [&](double r) { return h(r) * std::sqrt(std::max(0.0, (2.0 - r) * (2.0 + r))); },
                RadialMap::sine, resolution);
        }
    } else {
        // weight |y|^{-1} (4 - r^2)^{(n-3)/2}
        if (dim_n == 2) {
            rhs = radial_ball_integral(
                dim_n, 2.0, [&](double r) { return h(r) / (r * std::sqrt((2.0 - r) * (2.0 + r))); },
                RadialMap::sine, resolution);
        } else {
            rhs = radial_ball_integral(dim_n, 2.0, [&](double r) { return h(r) / r; }, RadialMap::linear,
                                       resolution);
        }
    }
    IdentityReport report = make_report(which == 1 ? IdentityName::coarea1 : IdentityName::coarea2, lhs, c * rhs);
    report.parameters["n"] = std::to_string(dim_n);
    report.parameters["resolution"] = std::to_string(resolution);
    report.parameters["rotated"] = rotation ? "true" : "false";
    return report;
}

IdentityReport check_hs_norm(int dim_n, double kappa, const RadialProfile& h_hat, int resolution) {
    require_dim(dim_n);
    if (!(kappa > 0.0) || !std::isfinite(kappa)) {
        throw std::invalid_argument("kappa must be positive and finite");
    }
    const auto squared = [&](double r) {
        const double v = h_hat(r);
        return v * v;
    };
    const double lhs = std::pow(kappa, dim_n - 1) *
                       double_sphere_integral(
                           dim_n, [&](double d) { return squared(kappa * d); }, false, resolution, std::nullopt);

    const double c = coarea_constant(dim_n, 2);
    const double radius = 2.0 * kappa;
    double rhs = 0.0;
    if (dim_n == 2) {
        rhs = radial_ball_integral(
            dim_n, radius,
            [&](double r) {
                const double t = r / kappa;
                return squared(r) / (r * std::sqrt((2.0 - t) * (2.0 + t)));
            },
            RadialMap::sine, resolution);
    } else {
        rhs = radial_ball_integral(dim_n, radius, [&](double r) { return squared(r) / r; }, RadialMap::linear,
                                   resolution);
    }
    IdentityReport report = make_report(IdentityName::hs_norm, lhs, c * rhs);
    report.parameters["n"] = std::to_string(dim_n);
    report.parameters["kappa"] = format_real(kappa);
    report.parameters["resolution"] = std::to_string(resolution);
    return report;
}

IdentityReport check_determinant(std::span<const double> u, std::span<const double> v) {
    if (u.size() != v.size()) {
        throw std::invalid_argument("check_determinant: u and v differ in length");
    }
    const std::size_t m = u.size();
    if (m < 1 || m > 12) {
        throw std::invalid_argument("check_determinant: length must be in [1, 12]");
    }
    DenseMatrix a(m, m);
    double uu = 0.0;
    double vv = 0.0;
    double uv = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            a(i, j) = (i == j ? 2.0 : 0.0) - u[i] * u[j] - v[i] * v[j];
        }
        uu += u[i] * u[i];
        vv += v[i] * v[i];
        uv += u[i] * v[i];
    }
    const double lhs = lu_determinant(a);
    const double rhs = std::ldexp(2.0 - uu - vv + 0.5 * uu * vv - 0.5 * uv * uv, static_cast<int>(m) - 1);
    IdentityReport report = make_report(IdentityName::determinant, lhs, rhs);
    report.parameters["m"] = std::to_string(m);
    return report;
}

std::vector<IdentityReport> check_ah_limit(int dim_n, std::uint32_t ell, std::span<const double> kappas) {
    require_dim(dim_n);
    for (std::size_t i = 1; i < kappas.size(); ++i) {
        if (!(kappas[i] > kappas[i - 1])) {
            throw std::invalid_argument("check_ah_limit: kappa sequence must be increasing");
        }
    }
    std::vector<IdentityReport> out;
    for (double kappa : kappas) {
        const double lambda = lambda_ell(dim_n, kappa, ell);
        IdentityReport r = make_report(IdentityName::ah_limit, lambda, 1.0 / pi);
        const double gap = std::abs(lambda - 1.0 / pi);
        r.parameters["n"] = std::to_string(dim_n);
        r.parameters["ell"] = std::to_string(ell);
        r.parameters["kappa"] = format_real(kappa);
        r.parameters["gap"] = format_real(gap);
        r.parameters["gap_times_kappa"] = format_real(gap * kappa);
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<IdentityReport> check_cross_formula(double kappa, std::uint32_t ell_max) {
    std::vector<IdentityReport> out;
    const auto table = lambda_table(3, kappa, static_cast<std::size_t>(ell_max) + 1);
    const double c3 = std::pow(2.0 * pi, 3);
    for (std::uint32_t ell = 0; ell <= ell_max; ++ell) {
        const double lhs = std::sqrt(c3 * std::max(0.0, table[ell]));
        const double rhs = herglotz_sigma_spherical(kappa, ell);
        IdentityReport r = make_report(IdentityName::cross_check, lhs, rhs);
        r.parameters["n"] = "3";
        r.parameters["kappa"] = format_real(kappa);
        r.parameters["ell"] = std::to_string(ell);
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<NamedProfile> smooth_profile_corpus() {
    return {
        {"const", [](double) { return 1.0; }},
        {"gauss", [](double r) { return std::exp(-r * r); }},
        {"quadratic", [](double r) { return 4.0 - r * r; }},
        {"cos", [](double r) { return std::cos(r); }},
    };
}

RadialProfile profile_by_name(std::string_view name) {
    for (auto& p : smooth_profile_corpus()) {
        if (p.name == name) {
            return p.h;
        }
    }
    throw std::invalid_argument("unknown profile '" + std::string(name) + "' (const, gauss, quadratic, cos)");
}

}  // namespace resolab
