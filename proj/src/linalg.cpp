#include "resolab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "resolab/spectrum.hpp"

namespace resolab {

namespace {

// Column-major view over an n x n work array: V(i, j) = a[j * n + i].
// Columns are contiguous, which is what the Householder and QL inner
// loops walk.
class ColumnMajor {
public:
    ColumnMajor(std::vector<double>& a, std::size_t n) : a_(a.data()), n_(n) {}
    double& operator()(std::size_t i, std::size_t j) { return a_[j * n_ + i]; }

private:
    double* a_;
    std::size_t n_;
};

// Householder reduction to tridiagonal form (EISPACK tred2 ordering).
// On exit d holds the diagonal and e the subdiagonal in e[1..n-1]. When
// `accumulate` is set, the work array holds the orthogonal transformation.
void tridiagonalize(std::vector<double>& work, std::size_t n, std::vector<double>& d, std::vector<double>& e,
                    bool accumulate) {
    ColumnMajor V(work, n);
    d.assign(n, 0.0);
    e.assign(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        d[j] = V(n - 1, j);
    }
    for (std::size_t i = n - 1; i > 0; --i) {
        double scale = 0.0;
        double h = 0.0;
        for (std::size_t k = 0; k < i; ++k) {
            scale += std::abs(d[k]);
        }
        if (scale == 0.0) {
            e[i] = d[i - 1];
            for (std::size_t j = 0; j < i; ++j) {
                d[j] = V(i - 1, j);
                V(i, j) = 0.0;
                V(j, i) = 0.0;
            }
        } else {
            for (std::size_t k = 0; k < i; ++k) {
                d[k] /= scale;
                h += d[k] * d[k];
            }
            double f = d[i - 1];
            double g = std::sqrt(h);
            if (f > 0.0) {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for (std::size_t j = 0; j < i; ++j) {
                e[j] = 0.0;
            }
            for (std::size_t j = 0; j < i; ++j) {
                f = d[j];
                V(j, i) = f;
                g = e[j] + V(j, j) * f;
                for (std::size_t k = j + 1; k < i; ++k) {
                    const double vkj = V(k, j);
                    g += vkj * d[k];
                    e[k] += vkj * f;
                }
                e[j] = g;
            }
            f = 0.0;
            for (std::size_t j = 0; j < i; ++j) {
                e[j] /= h;
                f += e[j] * d[j];
            }
            const double hh = f / (h + h);
            for (std::size_t j = 0; j < i; ++j) {
                e[j] -= hh * d[j];
            }
            for (std::size_t j = 0; j < i; ++j) {
                f = d[j];
                g = e[j];
                for (std::size_t k = j; k < i; ++k) {
                    V(k, j) -= (f * e[k] + g * d[k]);
                }
                d[j] = V(i - 1, j);
                V(i, j) = 0.0;
            }
        }
        d[i] = h;
    }

    if (!accumulate) {
        for (std::size_t j = 0; j < n; ++j) {
            d[j] = V(j, j);
        }
        e[0] = 0.0;
        return;
    }

    for (std::size_t i = 0; i + 1 < n; ++i) {
        V(n - 1, i) = V(i, i);
        V(i, i) = 1.0;
        const double h = d[i + 1];
        if (h != 0.0) {
            for (std::size_t k = 0; k <= i; ++k) {
                d[k] = V(k, i + 1) / h;
            }
            for (std::size_t j = 0; j <= i; ++j) {
                double g = 0.0;
                for (std::size_t k = 0; k <= i; ++k) {
                    g += V(k, i + 1) * V(k, j);
                }
                for (std::size_t k = 0; k <= i; ++k) {
                    V(k, j) -= g * d[k];
                }
            }
        }
        for (std::size_t k = 0; k <= i; ++k) {
            V(k, i + 1) = 0.0;
        }
    }
    for (std::size_t j = 0; j < n; ++j) {
        d[j] = V(n - 1, j);
        V(n - 1, j) = 0.0;
    }
    V(n - 1, n - 1) = 1.0;
    e[0] = 0.0;
}

// Implicit QL on the tridiagonal (d, e); rotations are applied to the work
// array columns when `vectors` is set. Returns the iteration count.
std::size_t ql_implicit(std::vector<double>& d, std::vector<double>& e, std::vector<double>* vectors,
                        std::size_t n) {
    for (std::size_t i = 1; i < n; ++i) {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;

    const std::size_t cap = 30 * n;
    std::size_t iterations = 0;
    double f = 0.0;
    double tst1 = 0.0;
    const double eps = std::ldexp(1.0, -52);
    for (std::size_t l = 0; l < n; ++l) {
        tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
        std::size_t m = l;
        while (m < n) {
            if (std::abs(e[m]) <= eps * tst1) {
                break;
            }
            ++m;
        }
        if (m > l) {
            do {
                if (++iterations > cap) {
                    throw ComputeError("symmetric_eigen: QL iteration cap (30 N) exceeded");
                }
                double g = d[l];
                double p = (d[l + 1] - g) / (2.0 * e[l]);
                double r = std::hypot(p, 1.0);
                if (p < 0) {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                const double dl1 = d[l + 1];
                double h = g - d[l];
                for (std::size_t i = l + 2; i < n; ++i) {
                    d[i] -= h;
                }
                f += h;

                p = d[m];
                double c = 1.0;
                double c2 = c;
                double c3 = c;
                const double el1 = e[l + 1];
                double s = 0.0;
                double s2 = 0.0;
                for (std::size_t ii = m; ii-- > l;) {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[ii];
                    h = c * p;
                    r = std::hypot(p, e[ii]);
                    e[ii + 1] = s * r;
                    s = e[ii] / r;
                    c = p / r;
                    p = c * d[ii] - s * g;
                    d[ii + 1] = h + s * (c * g + s * d[ii]);
                    if (vectors != nullptr) {
                        double* col0 = vectors->data() + ii * n;
                        double* col1 = col0 + n;
                        for (std::size_t k = 0; k < n; ++k) {
                            const double t = col1[k];
                            col1[k] = s * col0[k] + c * t;
                            col0[k] = c * col0[k] - s * t;
                        }
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
            } while (std::abs(e[l]) > eps * tst1);
        }
        d[l] += f;
        e[l] = 0.0;
    }
    return iterations;
}

double dot(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc += a[i] * b[i];
    }
    return acc;
}

}  // namespace

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

double lu_determinant(const DenseMatrix& m) {
    if (m.rows != m.cols) {
        throw std::invalid_argument("lu_determinant: matrix must be square");
    }
    if (m.rows > 64) {
        throw std::invalid_argument("lu_determinant: size exceeds 64");
    }
    const std::size_t n = m.rows;
    DenseMatrix a = m;
    double det = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a(r, col)) > std::abs(a(pivot, col))) {
                pivot = r;
            }
        }
        if (a(pivot, col) == 0.0) {
            return 0.0;
        }
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c) {
                std::swap(a(pivot, c), a(col, c));
            }
            det = -det;
        }
        const double diag = a(col, col);
        det *= diag;
        for (std::size_t r = col + 1; r < n; ++r) {
            const double factor = a(r, col) / diag;
            for (std::size_t c = col + 1; c < n; ++c) {
                a(r, c) -= factor * a(col, c);
            }
        }
    }
    return det;
}

SymmetricEigenResult symmetric_eigen(std::span<const double> matrix, std::size_t n, bool want_vectors) {
    if (n == 0 || matrix.size() != n * n) {
        throw std::invalid_argument("symmetric_eigen: matrix size mismatch");
    }
    // A symmetric row-major array is its own column-major transpose.
    std::vector<double> work(matrix.begin(), matrix.end());
    std::vector<double> d;
    std::vector<double> e;
    tridiagonalize(work, n, d, e, want_vectors);
    SymmetricEigenResult result;
    result.ql_iterations = ql_implicit(d, e, want_vectors ? &work : nullptr, n);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&d](std::size_t a, std::size_t b) { return d[a] > d[b]; });

    result.values.reserve(n);
    for (std::size_t idx : order) {
        result.values.push_back(d[idx]);
    }
    if (want_vectors) {
        DenseMatrix vec(n, n);
        for (std::size_t j = 0; j < n; ++j) {
            const double* col = work.data() + order[j] * n;
            for (std::size_t i = 0; i < n; ++i) {
                vec(i, j) = col[i];
            }
        }
        result.vectors = std::move(vec);
    }
    return result;
}

void symmetric_matvec(const SymmetricMatrixBuffer& a, std::span<const double> x, std::span<double> y) {
    const auto n = static_cast<std::ptrdiff_t>(a.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        y[static_cast<std::size_t>(i)] = dot(a.row(static_cast<std::size_t>(i)), x);
    }
}

void symmetric_matvec_serial(const SymmetricMatrixBuffer& a, std::span<const double> x, std::span<double> y) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        y[i] = dot(a.row(i), x);
    }
}

LanczosResult lanczos_topk(const SymmetricOperator& op, std::size_t k, const LanczosOptions& options) {
    const std::size_t n = op.size;
    if (k == 0 || k > n) {
        throw std::invalid_argument("lanczos_topk: require 1 <= k <= N");
    }
    std::size_t m = options.basis_size != 0 ? options.basis_size : std::max(2 * k + 16, k + 32);
    m = std::min(m, n);
    if (m <= k && m < n) {
        m = std::min(n, k + 1);
    }

    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> uniform(-1.0, 1.0);

    // Basis vectors v_0 .. v_m stored contiguously.
    std::vector<double> basis((m + 1) * n, 0.0);
    auto vec = [&](std::size_t j) { return std::span<double>(basis.data() + j * n, n); };
    std::vector<double> w(n);
    std::vector<double> coeff(m + 1);

    // Orthogonalize w against v_0..v_{upto-1} twice; returns the norm left.
    auto orthogonalize = [&](std::span<double> target, std::size_t upto, std::span<double> acc) {
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t i = 0; i < upto; ++i) {
                const double h = dot(vec(i), target);
                if (i < acc.size()) {
                    acc[i] += h;
                }
                auto vi = vec(i);
                for (std::size_t t = 0; t < n; ++t) {
                    target[t] -= h * vi[t];
                }
            }
        }
        return std::sqrt(dot(target, target));
    };

    // Fresh random direction orthogonal to the first `upto` basis vectors.
    auto random_direction = [&](std::size_t slot, std::size_t upto) {
        auto v = vec(slot);
        for (int attempt = 0; attempt < 8; ++attempt) {
            for (double& x : v) {
                x = uniform(rng);
            }
            const double norm = orthogonalize(v, upto, {});
            if (norm > 1e-8) {
                for (double& x : v) {
                    x /= norm;
                }
                return true;
            }
        }
        return false;
    };

    LanczosResult result;
    random_direction(0, 0);

    DenseMatrix t(m, m, 0.0);
    std::size_t kept = 0;
    double last_beta = 0.0;
    std::size_t built = m;

    while (true) {
        built = m;
        for (std::size_t j = kept; j < m; ++j) {
            op.apply(vec(j), w);
            ++result.matvecs;
            std::fill(coeff.begin(), coeff.end(), 0.0);
            const double beta = orthogonalize(w, j + 1, std::span<double>(coeff.data(), j + 1));
            t(j, j) = coeff[j];
            if (j + 1 == n) {
                last_beta = 0.0;
                built = j + 1;
                break;
            }
            const double scale = std::max(std::abs(t(j, j)), 1.0);
            if (beta <= 1e-13 * scale) {
                // Invariant subspace: continue with an unrelated direction.
                if (j + 1 < m) {
                    if (!random_direction(j + 1, j + 1)) {
                        built = j + 1;
                        last_beta = 0.0;
                        break;
                    }
                    t(j, j + 1) = t(j + 1, j) = 0.0;
                } else {
                    std::fill(vec(m).begin(), vec(m).end(), 0.0);
                    last_beta = 0.0;
                }
                continue;
            }
            auto next = vec(j + 1);
            for (std::size_t i = 0; i < n; ++i) {
                next[i] = w[i] / beta;
            }
            if (j + 1 < m) {
                t(j, j + 1) = t(j + 1, j) = beta;
            } else {
                last_beta = beta;
            }
        }

        // Ritz pairs of the projected matrix.
        DenseMatrix small(built, built);
        for (std::size_t i = 0; i < built; ++i) {
            for (std::size_t j = 0; j < built; ++j) {
                small(i, j) = t(i, j);
            }
        }
        const auto ritz = symmetric_eigen(small.data, built, true);
        const DenseMatrix& y = *ritz.vectors;

        const double anchor = std::max(std::abs(ritz.values.front()), std::numeric_limits<double>::min());
        result.values.assign(ritz.values.begin(), ritz.values.begin() + static_cast<std::ptrdiff_t>(k));
        result.residuals.assign(k, 0.0);
        bool all_converged = true;
        for (std::size_t i = 0; i < k; ++i) {
            result.residuals[i] = std::abs(last_beta * y(built - 1, i));
            if (result.residuals[i] > options.tolerance * anchor) {
                all_converged = false;
            }
        }
        if (all_converged || built < m) {
            result.converged = all_converged || last_beta == 0.0;
            return result;
        }
        if (result.restarts >= options.max_restarts) {
            result.converged = false;
            return result;
        }
        ++result.restarts;

        // Thick restart: keep the leading Ritz vectors, append the residual direction.
        const std::size_t keep = std::min(m - 1, k + (m - k) / 2);
        std::vector<double> kept_vectors(keep * n, 0.0);
        for (std::size_t c = 0; c < keep; ++c) {
            double* out = kept_vectors.data() + c * n;
            for (std::size_t j = 0; j < m; ++j) {
                const double coef = y(j, c);
                const auto vj = vec(j);
                for (std::size_t i = 0; i < n; ++i) {
                    out[i] += coef * vj[i];
                }
            }
        }
        const std::vector<double> residual_dir(vec(m).begin(), vec(m).end());
        std::fill(basis.begin(), basis.end(), 0.0);
        std::copy(kept_vectors.begin(), kept_vectors.end(), basis.begin());
        std::copy(residual_dir.begin(), residual_dir.end(), basis.begin() + static_cast<std::ptrdiff_t>(keep * n));

        t = DenseMatrix(m, m, 0.0);
        for (std::size_t c = 0; c < keep; ++c) {
            t(c, c) = ritz.values[c];
            const double s = last_beta * y(m - 1, c);
            t(c, keep) = t(keep, c) = s;
        }
        kept = keep;
    }
}

}  // namespace resolab
