#include "resolab/farfield.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "resolab/bessel.hpp"
#include "resolab/format.hpp"

namespace resolab {

namespace {

constexpr double pi = std::numbers::pi;

void require_inputs(int dim_n, double kappa, const GridSpec& grid, std::size_t row_cap) {
    if (dim_n != 2 && dim_n != 3) {
        throw std::invalid_argument("unsupported dimension n = " + std::to_string(dim_n) + " (need 2 or 3)");
    }
    if (grid.dim != dim_n) {
        throw std::invalid_argument("grid dimension does not match n");
    }
    if (!(kappa > 0.0) || !std::isfinite(kappa)) {
        throw std::invalid_argument("kappa must be positive and finite");
    }
    if (grid.size() > row_cap) {
        throw std::length_error("Gram matrix with " + std::to_string(grid.size()) + " rows exceeds the cap of " +
                                std::to_string(row_cap));
    }
}

std::array<std::size_t, 3> lattice_coords(std::size_t index, std::size_t m, int dim) {
    std::array<std::size_t, 3> c{0, 0, 0};
    for (int d = 0; d < dim; ++d) {
        c[static_cast<std::size_t>(d)] = index % m;
        index /= m;
    }
    return c;
}

}  // namespace

double farfield_kernel(int dim_n, double kappa, double dist) {
    if (!(dist >= 0.0)) {
        throw std::domain_error("farfield_kernel: distance must be non-negative");
    }
    if (!(kappa > 0.0) || !std::isfinite(kappa)) {
        throw std::domain_error("farfield_kernel: kappa must be positive and finite");
    }
    const double prefactor = std::pow(2.0 * pi, dim_n) * std::pow(kappa, dim_n - 1);
    if (dim_n == 2) {
        const double j = bessel_j(BesselOrder::integer(0), kappa * dist);
        return prefactor * j * j;
    }
    if (dim_n == 3) {
        if (dist == 0.0) {
            // 2^(2-n) / Gamma(n/2)^2 at n = 3.
            const double g = gamma_half_integer(3);
            return prefactor * 0.5 / (g * g);
        }
        const double z = kappa * dist;
        const double j = bessel_j(BesselOrder::half_integer(0), z);
        return prefactor * j * j / z;
    }
    throw std::invalid_argument("farfield_kernel: n must be 2 or 3");
}

SymmetricMatrixBuffer assemble_gram(int dim_n, double kappa, const GridSpec& grid, std::size_t row_cap) {
    require_inputs(dim_n, kappa, grid, row_cap);
    const auto m = static_cast<std::size_t>(grid.m);
    const std::size_t n = grid.size();
    const double h = grid.spacing();
    const double volume = grid.cell_volume();

    // Kernel value per absolute lattice offset (a, b, c), first axis fastest.
    std::vector<double> table(n);
    const auto table_size = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t t = 0; t < table_size; ++t) {
        const auto c = lattice_coords(static_cast<std::size_t>(t), m, dim_n);
        const double a = static_cast<double>(c[0]);
        const double b = static_cast<double>(c[1]);
        const double e = static_cast<double>(c[2]);
        const double dist = h * std::sqrt(a * a + b * b + e * e);
        table[static_cast<std::size_t>(t)] = farfield_kernel(dim_n, kappa, dist) * volume;
    }

    SymmetricMatrixBuffer gram(n);
    const auto rows = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t ii = 0; ii < rows; ++ii) {
        const auto i = static_cast<std::size_t>(ii);
        const auto ci = lattice_coords(i, m, dim_n);
        for (std::size_t j = i; j < n; ++j) {
            const auto cj = lattice_coords(j, m, dim_n);
            std::size_t offset = 0;
            std::size_t stride = 1;
            for (std::size_t d = 0; d < static_cast<std::size_t>(dim_n); ++d) {
                const std::size_t delta = ci[d] > cj[d] ? ci[d] - cj[d] : cj[d] - ci[d];
                offset += delta * stride;
                stride *= m;
            }
            gram.set(i, j, table[offset]);
        }
    }
    return gram;
}

SymmetricMatrixBuffer assemble_gram_serial(int dim_n, double kappa, const GridSpec& grid, std::size_t row_cap) {
    require_inputs(dim_n, kappa, grid, row_cap);
    const std::size_t n = grid.size();
    const double volume = grid.cell_volume();
    SymmetricMatrixBuffer gram(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Point3 xi = grid.midpoint(i);
        for (std::size_t j = i; j < n; ++j) {
            const Point3 xj = grid.midpoint(j);
            const double dx = xi[0] - xj[0];
            const double dy = xi[1] - xj[1];
            const double dz = xi[2] - xj[2];
            const double dist = std::sqrt(dx * dx + dy * dy + dz * dz);
            gram.set(i, j, farfield_kernel(dim_n, kappa, dist) * volume);
        }
    }
    return gram;
}

EigenvalueResult symmetric_eigenvalues(const SymmetricMatrixBuffer& matrix, const EigenMode& mode) {
    const std::size_t n = matrix.size();
    EigenvalueResult out;
    if (std::holds_alternative<FullEigen>(mode)) {
        if (n > full_eigen_row_cap) {
            throw std::invalid_argument("full eigensolver limited to N <= 5000; use top_k mode");
        }
        out.values = symmetric_eigen(matrix.data(), n, false).values;
        out.method = "householder_ql";
        return out;
    }
    const std::size_t k = std::get<TopK>(mode).k;
    if (k == 0 || k > n) {
        throw std::invalid_argument("top_k requires 1 <= k <= N");
    }
    SymmetricOperator op{n, [&matrix](std::span<const double> x, std::span<double> y) {
                             symmetric_matvec(matrix, x, y);
                         }};
    const LanczosResult lr = lanczos_topk(op, k);
    out.values = lr.values;
    out.converged = lr.converged;
    out.method = "lanczos_thick_restart";
    return out;
}

SpectrumRecord farfield_singular_values(int dim_n, double kappa, const GridSpec& grid, bool normalized,
                                        const EigenMode& mode) {
    const SymmetricMatrixBuffer gram = assemble_gram(dim_n, kappa, grid);
    const EigenvalueResult eig = symmetric_eigenvalues(gram, mode);

    std::vector<double> sigma;
    sigma.reserve(eig.values.size());
    std::size_t dropped = 0;
    for (double lambda : eig.values) {
        const double s = std::sqrt(std::abs(lambda));
        if (s > 0.0) {
            sigma.push_back(s);
        } else {
            ++dropped;
        }
    }
    std::sort(sigma.begin(), sigma.end(), std::greater<>());
    const double factor = normalized ? std::pow(kappa, -0.5 * (dim_n - 1)) : 1.0;

    SpectrumRecord rec;
    rec.dim_n = dim_n;
    rec.kappa = kappa;
    rec.tag = normalized ? OperatorTag::farfield_ftilde : OperatorTag::farfield_f;
    for (std::size_t j = 0; j < sigma.size(); ++j) {
        rec.entries.push_back({j + 1, sigma[j] * factor, std::nullopt});
    }
    rec.method_meta["grid_m"] = std::to_string(grid.m);
    rec.method_meta["domain"] = "unit_cube";
    rec.method_meta["nodes"] = "cell_midpoints";
    rec.method_meta["normalized"] = normalized ? "true" : "false";
    rec.method_meta["eig_mode"] = std::holds_alternative<FullEigen>(mode)
                                      ? std::string("full")
                                      : "top_k(" + std::to_string(std::get<TopK>(mode).k) + ")";
    rec.method_meta["eig_method"] = eig.method;
    rec.method_meta["converged"] = eig.converged ? "true" : "false";
    if (dropped > 0) {
        rec.method_meta["dropped_zero_eigenvalues"] = std::to_string(dropped);
    }
    return rec;
}

}  // namespace resolab
