#include <doctest.h>

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "resolab/linalg.hpp"
#include "resolab/spectrum.hpp"

using namespace resolab;

namespace {

double cofactor_det(const std::vector<double>& a, std::size_t n) {
    if (n == 1) {
        return a[0];
    }
    double det = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<double> minor;
        for (std::size_t i = 1; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (j != c) {
                    minor.push_back(a[i * n + j]);
                }
            }
        }
        det += (c % 2 == 0 ? 1.0 : -1.0) * a[c] * cofactor_det(minor, n - 1);
    }
    return det;
}

// Eigenvalues of a symmetric 3x3 matrix from the trigonometric cubic formula, descending.
std::vector<double> cubic_eigenvalues(const std::vector<double>& a) {
    const double p1 = a[1] * a[1] + a[2] * a[2] + a[5] * a[5];
    const double q = (a[0] + a[4] + a[8]) / 3.0;
    const double p2 = (a[0] - q) * (a[0] - q) + (a[4] - q) * (a[4] - q) + (a[8] - q) * (a[8] - q) + 2.0 * p1;
    const double p = std::sqrt(p2 / 6.0);
    std::vector<double> b(9);
    for (int i = 0; i < 9; ++i) {
        b[i] = (a[i] - (i % 4 == 0 ? q : 0.0)) / p;
    }
    const double r = std::clamp(cofactor_det(b, 3) / 2.0, -1.0, 1.0);
    const double phi = std::acos(r) / 3.0;
    const double l1 = q + 2.0 * p * std::cos(phi);
    const double l3 = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
    return {l1, 3.0 * q - l1 - l3, l3};
}

std::vector<double> random_symmetric(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> a(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            a[i * n + j] = a[j * n + i] = u(rng);
        }
    }
    return a;
}

}  // namespace

TEST_CASE("lu_determinant") {
    CHECK(lu_determinant(DenseMatrix::identity(5)) == 1.0);
    for (std::size_t m : {1u, 4u, 9u}) {
        DenseMatrix d(m, m);
        for (std::size_t i = 0; i < m; ++i) {
            d(i, i) = 2.0;
        }
        CHECK(lu_determinant(d) == std::ldexp(1.0, static_cast<int>(m)));
    }
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        DenseMatrix a(4, 4);
        for (auto& v : a.data) {
            v = u(rng);
        }
        const double want = cofactor_det(a.data, 4);
        CHECK(std::abs(lu_determinant(a) - want) <= 1e-12 * std::max(std::abs(want), 1e-3));
    }
    DenseMatrix singular(3, 3, 1.0);
    CHECK(lu_determinant(singular) == 0.0);
    DenseMatrix swap(2, 2);
    swap(0, 1) = 1.0;
    swap(1, 0) = 1.0;
    CHECK(lu_determinant(swap) == -1.0);
    CHECK_THROWS(lu_determinant(DenseMatrix(2, 3)));
    CHECK_THROWS(lu_determinant(DenseMatrix(65, 65)));
}

TEST_CASE("symmetric_eigen small examples") {
    const auto r1 = symmetric_eigen(std::vector<double>{0, 1, 1, 0}, 2, false);
    CHECK(r1.values[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(r1.values[1] == doctest::Approx(-1.0).epsilon(1e-15));
    const auto r2 = symmetric_eigen(std::vector<double>{2, 1, 1, 2}, 2, false);
    CHECK(r2.values[0] == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(r2.values[1] == doctest::Approx(1.0).epsilon(1e-15));
    const auto r3 = symmetric_eigen(std::vector<double>{3, 0, 0, 0, 1, 0, 0, 0, 2}, 3, false);
    CHECK(r3.values == std::vector<double>{3, 2, 1});

    // graded diagonal
    const std::size_t n = 12;
    std::vector<double> g(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        g[i * n + i] = std::pow(10.0, -static_cast<double>(i));
    }
    const auto rg = symmetric_eigen(g, n, false);
    for (std::size_t i = 0; i < n; ++i) {
        CHECK(rg.values[i] == std::pow(10.0, -static_cast<double>(i)));
    }
    const auto one = symmetric_eigen(std::vector<double>{4.5}, 1, true);
    CHECK(one.values == std::vector<double>{4.5});
}

TEST_CASE("3x3 eigenvalues against the closed-form cubic") {
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        const auto a = random_symmetric(3, seed);
        const auto want = cubic_eigenvalues(a);
        const auto got = symmetric_eigen(a, 3, false).values;
        for (int i = 0; i < 3; ++i) {
            CHECK(std::abs(got[i] - want[i]) <= 1e-10);
        }
    }
}

TEST_CASE("200x200 reconstruction, trace, and residuals") {
    const std::size_t n = 200;
    const auto a = random_symmetric(n, 99);
    const auto r = symmetric_eigen(a, n, true);
    REQUIRE(r.vectors.has_value());
    const DenseMatrix& q = *r.vectors;
    double norm_a = 0.0;
    double diff = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                s += q(i, k) * r.values[k] * q(j, k);
            }
            diff += (a[i * n + j] - s) * (a[i * n + j] - s);
            norm_a += a[i * n + j] * a[i * n + j];
        }
    }
    CHECK(std::sqrt(diff) <= 1e-8 * std::sqrt(norm_a));
    double trace = 0.0;
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        trace += a[i * n + i];
        sum += r.values[i];
    }
    CHECK(std::abs(trace - sum) <= 1e-10 * std::max(1.0, std::abs(trace)));
    CHECK(std::is_sorted(r.values.rbegin(), r.values.rend()));
    // spot-check ||A v - lambda v|| <= 1e-10 ||A|| ||v||
    for (std::size_t k : {0u, 57u, 199u}) {
        double res = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double av = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                av += a[i * n + j] * q(j, k);
            }
            res += std::pow(av - r.values[k] * q(i, k), 2);
        }
        CHECK(std::sqrt(res) <= 1e-10 * std::sqrt(norm_a));
    }
}

TEST_CASE("Lanczos top-k matches the full solver") {
    const std::size_t n = 300;
    // PSD matrix with decaying spectrum: B B^T / n
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g;
    std::vector<double> b(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            b[i * n + j] = g(rng) * std::exp(-0.05 * static_cast<double>(j));
        }
    }
    SymmetricMatrixBuffer a(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                s += b[i * n + k] * b[j * n + k];
            }
            a.set(i, j, s / static_cast<double>(n));
        }
    }
    const auto full = symmetric_eigen(a.data(), n, false);
    SymmetricOperator op{n, [&a](std::span<const double> x, std::span<double> y) { symmetric_matvec(a, x, y); }};
    const auto lz = lanczos_topk(op, 20);
    REQUIRE(lz.converged);
    REQUIRE(lz.values.size() == 20);
    for (std::size_t i = 0; i < 20; ++i) {
        CHECK(std::abs(lz.values[i] - full.values[i]) <= 1e-8 * full.values[i]);
    }
    // an unreachable tolerance reports non-convergence instead of throwing
    LanczosOptions strict;
    strict.tolerance = 0.0;
    strict.max_restarts = 2;
    const auto partial = lanczos_topk(op, 20, strict);
    CHECK_FALSE(partial.converged);
    CHECK(partial.values.size() == 20);
}

TEST_CASE("Lanczos on an operator with repeated eigenvalues") {
    const std::size_t n = 50;
    SymmetricMatrixBuffer a(n);
    for (std::size_t i = 0; i < n; ++i) {
        a.set(i, i, i < 5 ? 7.0 : 1.0 / static_cast<double>(i));
    }
    SymmetricOperator op{n, [&a](std::span<const double> x, std::span<double> y) { symmetric_matvec(a, x, y); }};
    const auto lz = lanczos_topk(op, 6);
    REQUIRE(lz.converged);
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(lz.values[i] == doctest::Approx(7.0).epsilon(1e-10));
    }
    CHECK(lz.values[5] == doctest::Approx(0.2).epsilon(1e-10));
}

TEST_CASE("parallel matvec is bit-identical to the serial reference") {
    const std::size_t n = 257;
    const auto raw = random_symmetric(n, 8);
    SymmetricMatrixBuffer a(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            a.set(i, j, raw[i * n + j]);
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = std::sin(static_cast<double>(i));
    }
    std::vector<double> y1(n), y2(n), y3(n);
    symmetric_matvec_serial(a, x, y1);
    symmetric_matvec(a, x, y2);
    const int saved = omp_get_max_threads();
    omp_set_num_threads(4);
    symmetric_matvec(a, x, y3);
    omp_set_num_threads(saved);
    CHECK(y1 == y2);
    CHECK(y1 == y3);
}
