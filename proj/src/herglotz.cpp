#include "resolab/herglotz.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "resolab/bessel.hpp"
#include "resolab/format.hpp"
#include "resolab/quadrature.hpp"

namespace resolab {

namespace {

constexpr double pi = std::numbers::pi;

void require_dim(int dim_n) {
    if (dim_n != 2 && dim_n != 3) {
        throw std::invalid_argument("unsupported dimension n = " + std::to_string(dim_n) + " (need 2 or 3)");
    }
}

void require_kappa(double kappa) {
    if (!(kappa > 0.0) || !std::isfinite(kappa)) {
        throw std::invalid_argument("kappa must be positive and finite");
    }
}

double two_pi_pow(int dim_n) { return std::pow(2.0 * pi, dim_n); }

// Per-panel contributions sum_i w_i r_i J_{ell+nu}(r_i)^2 for every ell.
void accumulate_panel(bool half_family, double lo, double h, const QuadratureRule& reference,
                      std::vector<double>& out) {
    const double mid = lo + 0.5 * h;
    for (std::size_t i = 0; i < reference.size(); ++i) {
        const double r = mid + 0.5 * h * reference.nodes[i][0];
        const double w = 0.5 * h * reference.weights[i] * r;
        const auto seq = bessel_j_sequence(half_family, out.size(), r);
        for (std::size_t k = 0; k < out.size(); ++k) {
            out[k] += w * seq[k] * seq[k];
        }
    }
}

std::vector<double> lambda_table_impl(int dim_n, double kappa, std::size_t count, bool parallel) {
    require_dim(dim_n);
    require_kappa(kappa);
    const bool half_family = (dim_n == 3);
    const QuadratureRule reference = gauss_legendre(default_panel_points);
    const auto panels = static_cast<std::ptrdiff_t>(std::ceil(kappa / default_panel_len));
    const double h = kappa / static_cast<double>(panels);

    std::vector<std::vector<double>> partial(static_cast<std::size_t>(panels), std::vector<double>(count, 0.0));
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (std::ptrdiff_t p = 0; p < panels; ++p) {
        accumulate_panel(half_family, h * static_cast<double>(p), h, reference,
                         partial[static_cast<std::size_t>(p)]);
    }

    std::vector<double> lambda(count, 0.0);
    for (const auto& panel : partial) {
        for (std::size_t k = 0; k < count; ++k) {
            lambda[k] += panel[k];
        }
    }
    for (double& v : lambda) {
        v /= kappa;
    }
    return lambda;
}

}  // namespace

std::size_t multiplicity(int dim_n, std::uint32_t ell) {
    require_dim(dim_n);
    if (dim_n == 2) {
        return ell == 0 ? 1 : 2;
    }
    return 2 * static_cast<std::size_t>(ell) + 1;
}

double lambda_ell(int dim_n, double kappa, std::uint32_t ell) {
    require_dim(dim_n);
    require_kappa(kappa);
    const BesselOrder order(dim_n == 2 ? 2 * ell : 2 * ell + 1);
    const double integral = integrate_interval(
        [order](double r) {
            const double j = bessel_j(order, r);
            return r * j * j;
        },
        0.0, kappa, default_panel_len, default_panel_points);
    return integral / kappa;
}

std::vector<double> lambda_table(int dim_n, double kappa, std::size_t count) {
    return lambda_table_impl(dim_n, kappa, count, true);
}

std::vector<double> lambda_table_serial(int dim_n, double kappa, std::size_t count) {
    return lambda_table_impl(dim_n, kappa, count, false);
}

double herglotz_sigma_spherical(double kappa, std::uint32_t ell) {
    require_kappa(kappa);
    const double integral = integrate_interval(
        [kappa, ell](double r) {
            const double j = spherical_j(ell, kappa * r);
            return r * r * j * j;
        },
        0.0, 1.0, default_panel_len / std::max(kappa, 1.0), default_panel_points);
    return 4.0 * pi * kappa * std::sqrt(integral);
}

SpectrumRecord herglotz_singular_values(int dim_n, double kappa, const Truncation& truncation) {
    require_dim(dim_n);
    require_kappa(kappa);
    if (!(truncation.sigma_floor >= 0.0)) {
        throw std::invalid_argument("sigma_floor must be non-negative");
    }
    if (truncation.max_count && *truncation.max_count == 0) {
        throw std::invalid_argument("max_count must be positive");
    }
    const double c_n = two_pi_pow(dim_n);
    const double lambda_floor = truncation.sigma_floor * truncation.sigma_floor / c_n;
    const double turning = 2.0 * kappa;

    struct Block {
        std::uint32_t ell;
        double sigma;
    };
    std::vector<Block> blocks;
    std::size_t count = std::max<std::size_t>(64, static_cast<std::size_t>(std::ceil(turning)) + 32);
    std::uint32_t last_degree = 0;
    bool stopped = false;
    while (!stopped) {
        if (count > static_cast<std::size_t>(max_generated_degree) + 1) {
            throw ComputeError("herglotz_singular_values: truncation not reached for degree <= " +
                               std::to_string(max_generated_degree));
        }
        const auto lambda = lambda_table(dim_n, kappa, count);
        blocks.clear();
        std::size_t total = 0;
        for (std::size_t k = 0; k < count; ++k) {
            const auto ell = static_cast<std::uint32_t>(k);
            const double value = lambda[k];
            const bool past_turning = static_cast<double>(ell) > turning;
            if (past_turning && (value < lambda_floor || value <= 0.0)) {
                stopped = true;
                last_degree = ell;
                break;
            }
            if (value > 0.0 && value >= lambda_floor) {
                blocks.push_back({ell, std::sqrt(c_n * value)});
                total += multiplicity(dim_n, ell);
            }
            if (past_turning && truncation.max_count && total >= *truncation.max_count) {
                stopped = true;
                last_degree = ell;
                break;
            }
        }
        if (!stopped) {
            count *= 2;
        }
    }

    // Descending by value; ties keep degree order so blocks stay contiguous.
    std::stable_sort(blocks.begin(), blocks.end(),
                     [](const Block& a, const Block& b) { return a.sigma > b.sigma; });

    SpectrumRecord rec;
    rec.dim_n = dim_n;
    rec.kappa = kappa;
    rec.tag = OperatorTag::herglotz_a;
    for (const auto& b : blocks) {
        if (truncation.max_count && rec.entries.size() >= *truncation.max_count) {
            break;
        }
        const std::size_t mult = multiplicity(dim_n, b.ell);
        for (std::size_t m = 0; m < mult; ++m) {
            rec.entries.push_back({rec.entries.size() + 1, b.sigma, b.ell});
        }
    }
    rec.method_meta["method"] = "jacobi_anger_lambda_table";
    rec.method_meta["panel_len"] = format_real(default_panel_len);
    rec.method_meta["panel_points"] = std::to_string(default_panel_points);
    rec.method_meta["sigma_floor"] = format_real(truncation.sigma_floor);
    if (truncation.max_count) {
        rec.method_meta["max_count"] = std::to_string(*truncation.max_count);
    }
    rec.method_meta["last_degree_examined"] = std::to_string(last_degree);
    return rec;
}

SpectrumRecord q_operator_spectrum(int dim_n, double kappa, const Truncation& truncation) {
    SpectrumRecord rec = herglotz_singular_values(dim_n, kappa, truncation);
    const double factor = std::pow(kappa, -0.5 * (dim_n - 1));
    for (auto& e : rec.entries) {
        e.sigma *= factor;
    }
    rec.tag = OperatorTag::herglotz_q;
    rec.method_meta["rescale"] = "kappa^(-(n-1)/2)";
    return rec;
}

}  // namespace resolab
