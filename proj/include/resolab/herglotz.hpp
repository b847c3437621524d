#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "resolab/spectrum.hpp"

namespace resolab {

/// Dimension of the degree-ell spherical harmonics on S^{n-1}, n in {2, 3}.
std::size_t multiplicity(int dim_n, std::uint32_t ell);

/// Lambda_ell(kappa) = (1/kappa) int_0^kappa r J_{ell+nu}(r)^2 dr, nu = (n-2)/2,
/// by composite Gauss-Legendre with the default panel settings.
double lambda_ell(int dim_n, double kappa, std::uint32_t ell);

/// Lambda_ell(kappa) for ell = 0 .. count-1 in one sweep: every quadrature
/// node evaluates the whole order sequence by one backward recurrence.
/// Panels are processed in parallel and reduced in panel order, so the
/// result does not depend on the thread count.
std::vector<double> lambda_table(int dim_n, double kappa, std::size_t count);

/// Single-threaded reference for lambda_table (same arithmetic, same order).
std::vector<double> lambda_table_serial(int dim_n, double kappa, std::size_t count);

/// Alternative n = 3 route through spherical Bessel functions:
/// 4 pi kappa (int_0^1 r^2 j_ell(kappa r)^2 dr)^{1/2}.
double herglotz_sigma_spherical(double kappa, std::uint32_t ell);

/// Stopping rule for spectrum generation. Generation runs over increasing
/// degree and stops once past ell > 2 kappa when either the count reaches
/// max_count or the value drops below sigma_floor.
struct Truncation {
    std::optional<std::size_t> max_count;
    double sigma_floor = 1e-14;
};

/// Hard cap on the generated degree.
inline constexpr std::uint32_t max_generated_degree = 100000;

/// Singular values ((2 pi)^n Lambda_ell(kappa))^{1/2} of the normalized
/// Herglotz operator, each repeated multiplicity(n, ell) times, descending.
/// With max_count set, the record is cut after the degree block containing
/// rank max_count, so blocks are never split.
SpectrumRecord herglotz_singular_values(int dim_n, double kappa, const Truncation& truncation = {});

/// Same spectrum rescaled by kappa^{-(n-1)/2} (operator without normalization).
SpectrumRecord q_operator_spectrum(int dim_n, double kappa, const Truncation& truncation = {});

}  // namespace resolab
