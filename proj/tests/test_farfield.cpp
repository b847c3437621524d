#include <doctest.h>

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "oracles/mpfr_bessel.hpp"
#include "resolab/farfield.hpp"

using namespace resolab;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("farfield_kernel examples") {
    CHECK(farfield_kernel(2, 1.0, 0.0) == doctest::Approx(4 * pi * pi).epsilon(1e-15));
    CHECK(farfield_kernel(2, 3.0, 0.0) == doctest::Approx(12 * pi * pi).epsilon(1e-15));
    CHECK(farfield_kernel(3, 1.0, 0.0) == doctest::Approx(16 * pi * pi).epsilon(1e-14));
    CHECK(farfield_kernel(3, 2.5, 0.0) == doctest::Approx(16 * pi * pi * 6.25).epsilon(1e-14));
    // the n=3 limit is approached continuously
    const double near = farfield_kernel(3, 1.0, 1e-8);
    CHECK(std::abs(near - 16 * pi * pi) <= 1e-12 * 16 * pi * pi);
    const double j0 = oracle::bessel_j_series(0, 1.0);
    CHECK(std::abs(farfield_kernel(2, 1.0, 1.0) - 4 * pi * pi * j0 * j0) <= 1e-14 * 4 * pi * pi);
    CHECK(j0 * j0 == doctest::Approx(0.5855270).epsilon(1e-6));
    // n=3: (2 pi)^3 kappa^2 (kappa d)^{-1} J_{1/2}(kappa d)^2 = (2 pi)^3 kappa^2 (2/pi) (sin z / z)^2
    for (double z : {0.3, 2.0, 11.7}) {
        const double want = std::pow(2 * pi, 3) * 4.0 * (2.0 / pi) * std::pow(std::sin(z) / z, 2);
        CHECK(std::abs(farfield_kernel(3, 2.0, z / 2.0) - want) <= 1e-13 * 16 * pi * pi * 4.0);
    }
    CHECK_THROWS(farfield_kernel(4, 1.0, 0.0));
    CHECK_THROWS(farfield_kernel(2, 0.0, 0.0));
    CHECK_THROWS(farfield_kernel(2, 1.0, -1.0));
}

TEST_CASE("gram matrix small grids") {
    const auto g1 = assemble_gram(2, 1.0, GridSpec(2, 1));
    REQUIRE(g1.size() == 1);
    CHECK(g1(0, 0) == doctest::Approx(4 * pi * pi).epsilon(1e-15));

    const auto g2 = assemble_gram(2, 1.0, GridSpec(2, 2));
    REQUIRE(g2.size() == 4);
    // index 0:(.25,.25) 1:(.75,.25) 2:(.25,.75) 3:(.75,.75)
    const double half = g2(0, 1);
    CHECK(g2(0, 2) == half);
    CHECK(g2(1, 3) == half);
    CHECK(g2(2, 3) == half);
    CHECK(g2(0, 3) == g2(1, 2));
    CHECK(half == doctest::Approx(farfield_kernel(2, 1.0, 0.5) / 4.0).epsilon(1e-15));
    CHECK(g2(0, 3) == doctest::Approx(farfield_kernel(2, 1.0, std::sqrt(0.5)) / 4.0).epsilon(1e-14));
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(g2(i, i) > 0.0);
        for (std::size_t j = 0; j < 4; ++j) {
            CHECK(g2(i, j) == g2(j, i));
        }
    }
}

TEST_CASE("parallel assembly matches the serial reference") {
    for (int n : {2, 3}) {
        const GridSpec grid(n, n == 2 ? 13 : 5);
        const double kappa = 6.3;
        const auto par = assemble_gram(n, kappa, grid);
        const auto ser = assemble_gram_serial(n, kappa, grid);
        const double scale = farfield_kernel(n, kappa, 0.0) * grid.cell_volume();
        double worst = 0.0;
        for (std::size_t i = 0; i < par.size(); ++i) {
            for (std::size_t j = 0; j < par.size(); ++j) {
                worst = std::max(worst, std::abs(par(i, j) - ser(i, j)));
            }
        }
        CHECK(worst <= 1e-13 * scale);

        const int saved = omp_get_max_threads();
        omp_set_num_threads(4);
        const auto four = assemble_gram(n, kappa, grid);
        omp_set_num_threads(saved);
        CHECK(std::equal(par.data().begin(), par.data().end(), four.data().begin()));
    }
}

TEST_CASE("gram matrix is positive semidefinite up to noise") {
    for (int n : {2, 3}) {
        const GridSpec grid(n, n == 2 ? 20 : 7);
        const auto g = assemble_gram(n, 5.0, grid);
        const auto ev = symmetric_eigenvalues(g, FullEigen{});
        CHECK(ev.values.back() >= -1e-10 * ev.values.front());
        CHECK(ev.method == "householder_ql");
    }
}

TEST_CASE("farfield singular values") {
    const auto one = farfield_singular_values(2, 1.0, GridSpec(2, 1), false, FullEigen{});
    REQUIRE(one.size() == 1);
    CHECK(one.sigma(1) == doctest::Approx(2 * pi).epsilon(1e-15));
    CHECK(one.tag == OperatorTag::farfield_f);
    CHECK(one.method_meta.at("grid_m") == "1");

    for (int n : {2, 3}) {
        const double kappa = 7.0;
        const GridSpec grid(n, n == 2 ? 16 : 6);
        const auto raw = farfield_singular_values(n, kappa, grid, false, FullEigen{});
        const auto scaled = farfield_singular_values(n, kappa, grid, true, FullEigen{});
        CHECK(scaled.tag == OperatorTag::farfield_ftilde);
        REQUIRE(raw.size() == scaled.size());
        const double factor = std::pow(kappa, -0.5 * (n - 1));
        for (std::size_t j = 1; j <= raw.size(); ++j) {
            CHECK(scaled.sigma(j) == raw.sigma(j) * factor);
        }
        CHECK_NOTHROW(raw.validate());
        CHECK(raw.method_meta.at("eig_mode") == "full");
    }
}

TEST_CASE("top-k agrees with the full solver on shared leading values") {
    const GridSpec grid(3, 8);
    const auto g = assemble_gram(3, 4.0, grid);
    const auto full = symmetric_eigenvalues(g, FullEigen{});
    const auto top = symmetric_eigenvalues(g, TopK{200});
    REQUIRE(top.converged);
    REQUIRE(top.values.size() == 200);
    CHECK(top.method == "lanczos_thick_restart");
    for (std::size_t i = 0; i < 200; ++i) {
        // relative to the leading value: the trailing part of the top 200 is already tiny
        CHECK(std::abs(top.values[i] - full.values[i]) <= 1e-6 * std::max(std::abs(full.values[i]), 1e-6 * full.values[0]));
    }

    const auto rec = farfield_singular_values(3, 4.0, GridSpec(3, 12), false, TopK{200});
    CHECK(rec.size() <= 200);
    CHECK(rec.method_meta.at("eig_mode") == "top_k(200)");
    CHECK(rec.method_meta.at("converged") == "true");
}

TEST_CASE("grid convergence for n=2, kappa=4") {
    const auto a = farfield_singular_values(2, 4.0, GridSpec(2, 60), false, TopK{20});
    const auto b = farfield_singular_values(2, 4.0, GridSpec(2, 90), false, TopK{20});
    REQUIRE(a.size() == 20);
    REQUIRE(b.size() == 20);
    for (std::size_t j = 1; j <= 20; ++j) {
        CAPTURE(j);
        CHECK(std::abs(a.sigma(j) - b.sigma(j)) <= 0.02 * b.sigma(j));
    }
}

TEST_CASE("caps and argument errors") {
    CHECK_THROWS_AS(assemble_gram(2, 1.0, GridSpec(2, 10), 99), std::length_error);
    CHECK_THROWS_AS(assemble_gram(3, 1.0, GridSpec(3, 40)), std::length_error);
    CHECK_THROWS_AS(assemble_gram(3, 1.0, GridSpec(2, 4)), std::invalid_argument);
    const auto g = assemble_gram(2, 1.0, GridSpec(2, 3));
    CHECK_THROWS(symmetric_eigenvalues(g, TopK{0}));
    CHECK_THROWS(symmetric_eigenvalues(g, TopK{10}));
    SymmetricMatrixBuffer big(full_eigen_row_cap + 1);
    CHECK_THROWS(symmetric_eigenvalues(big, FullEigen{}));
}
