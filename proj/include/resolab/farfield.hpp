#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "resolab/linalg.hpp"
#include "resolab/quadrature.hpp"
#include "resolab/spectrum.hpp"

namespace resolab {

/// Row cap for dense Gram assembly.
inline constexpr std::size_t default_gram_row_cap = 20000;
/// Row cap for the full (Householder + QL) eigensolver.
inline constexpr std::size_t full_eigen_row_cap = 5000;

/// Kernel of the discretized normal operator F*F:
/// G(d) = (2 pi)^n kappa^(n-1) (kappa d)^(2-n) J_{n/2-1}(kappa d)^2,
/// with the removable limit (2 pi)^n kappa^(n-1) 2^(2-n) / Gamma(n/2)^2 at d = 0.
double farfield_kernel(int dim_n, double kappa, double dist);

/// Gram matrix G(|x_i - x_j|) * cell_volume over the grid midpoints.
/// Kernel values are tabulated once per lattice offset, rows are filled in
/// parallel and every entry is written exactly once, so the matrix is
/// identical for any thread count.
SymmetricMatrixBuffer assemble_gram(int dim_n, double kappa, const GridSpec& grid,
                                    std::size_t row_cap = default_gram_row_cap);

/// Reference assembly: one kernel evaluation per entry from the midpoint
/// coordinates, single-threaded.
SymmetricMatrixBuffer assemble_gram_serial(int dim_n, double kappa, const GridSpec& grid,
                                           std::size_t row_cap = default_gram_row_cap);

struct FullEigen {};
struct TopK {
    std::size_t k = 64;
};
using EigenMode = std::variant<FullEigen, TopK>;

struct EigenvalueResult {
    std::vector<double> values;  ///< descending
    bool converged = true;       ///< false only for an unconverged top_k run
    std::string method;
};

/// Descending eigenvalues. FullEigen requires N <= 5000. An unconverged
/// TopK run returns its partial Ritz values with `converged` cleared.
EigenvalueResult symmetric_eigenvalues(const SymmetricMatrixBuffer& matrix, const EigenMode& mode);

/// sigma_j = sqrt(|lambda_j|) of the assembled Gram matrix, descending. With
/// `normalized` the values are scaled by kappa^{-(n-1)/2}.
SpectrumRecord farfield_singular_values(int dim_n, double kappa, const GridSpec& grid, bool normalized,
                                        const EigenMode& mode);

}  // namespace resolab
