#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace resolab {

/// Row-major dense matrix.
struct DenseMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    DenseMatrix() = default;
    DenseMatrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), data(r * c, fill) {}

    static DenseMatrix identity(std::size_t n);

    double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

/// Dense real symmetric N x N matrix, full row-major storage. Entries are
/// written in mirrored pairs so the stored matrix is exactly symmetric.
class SymmetricMatrixBuffer {
public:
    explicit SymmetricMatrixBuffer(std::size_t n) : n_(n), data_(n * n, 0.0) {}

    std::size_t size() const { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
    void set(std::size_t i, std::size_t j, double v) {
        data_[i * n_ + j] = v;
        data_[j * n_ + i] = v;
    }
    std::span<const double> data() const { return data_; }
    std::span<const double> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }

private:
    std::size_t n_;
    std::vector<double> data_;
};

/// Determinant by LU factorization with partial pivoting (size <= 64).
double lu_determinant(const DenseMatrix& m);

struct SymmetricEigenResult {
    std::vector<double> values;          ///< descending
    std::optional<DenseMatrix> vectors;  ///< column j pairs with values[j]
    std::size_t ql_iterations = 0;
};

/// All eigenvalues (and optionally eigenvectors) of a symmetric matrix given
/// in row-major order: Householder tridiagonalization followed by implicit
/// QL. Throws ComputeError when QL exceeds 30 N iterations.
SymmetricEigenResult symmetric_eigen(std::span<const double> matrix, std::size_t n, bool want_vectors);

/// y = A x for a symmetric operator of dimension `size`.
struct SymmetricOperator {
    std::size_t size = 0;
    std::function<void(std::span<const double>, std::span<double>)> apply;
};

struct LanczosOptions {
    std::size_t basis_size = 0;  ///< 0 selects max(2k + 16, k + 32), capped at N
    double tolerance = 1e-10;    ///< residual bound relative to the largest Ritz value
    std::size_t max_restarts = 500;
    std::uint64_t seed = 0x5eed5eedULL;
};

struct LanczosResult {
    std::vector<double> values;  ///< k largest eigenvalues, descending
    std::vector<double> residuals;
    bool converged = false;
    std::size_t restarts = 0;
    std::size_t matvecs = 0;
};

/// Largest-k eigenvalues by thick-restart Lanczos with full
/// reorthogonalization. Never throws on slow convergence: the caller checks
/// `converged` and decides.
LanczosResult lanczos_topk(const SymmetricOperator& op, std::size_t k, const LanczosOptions& options = {});

/// y = A x with rows distributed over threads; each row is a sequential dot
/// product, so the result is identical for any thread count.
void symmetric_matvec(const SymmetricMatrixBuffer& a, std::span<const double> x, std::span<double> y);

/// Single-threaded reference for symmetric_matvec.
void symmetric_matvec_serial(const SymmetricMatrixBuffer& a, std::span<const double> x, std::span<double> y);

}  // namespace resolab
