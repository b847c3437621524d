#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "resolab/herglotz.hpp"
#include "resolab/regions.hpp"

using namespace resolab;

namespace {

SpectrumRecord synthetic(const std::vector<double>& sigmas, OperatorTag tag = OperatorTag::farfield_f, int n = 2) {
    SpectrumRecord r;
    r.dim_n = n;
    r.kappa = 1.0;
    r.tag = tag;
    for (std::size_t i = 0; i < sigmas.size(); ++i) {
        r.entries.push_back({i + 1, sigmas[i], std::nullopt});
    }
    return r;
}

std::vector<XYPoint> sample(double (*f)(double), int count) {
    std::vector<XYPoint> pts;
    for (int j = 1; j <= count; ++j) {
        pts.push_back({static_cast<double>(j), f(j)});
    }
    return pts;
}

}  // namespace

TEST_CASE("transform names") {
    CHECK(XTransform{TransformKind::log_j, 1.0}.name() == "log_j");
    CHECK(XTransform{TransformKind::j_pow, 0.5}.name() == "j_pow(0.5)");
    CHECK(XTransform{TransformKind::log_kappa, 1.0}.name() == "log_kappa");
    CHECK(XTransform{TransformKind::j_pow, 0.25}.apply(16.0) == 2.0);
}

TEST_CASE("fit_loglog is exact on model data") {
    const auto pow_pts = sample([](double x) { return std::pow(x, -0.5); }, 40);
    const auto f = fit_loglog(pow_pts, {TransformKind::log_j, 1.0});
    CHECK(std::abs(f.slope + 0.5) <= 1e-12);
    CHECK(std::abs(f.intercept) <= 1e-12);
    CHECK(f.r_squared == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(f.window == std::pair<std::size_t, std::size_t>{1, 40});

    const auto exp_pts = sample([](double x) { return 3.0 * std::exp(-0.2 * std::cbrt(x)); }, 300);
    const auto g = fit_loglog(exp_pts, {TransformKind::j_pow, 1.0 / 3.0}, {10, 250});
    CHECK(std::abs(g.slope + 0.2) <= 1e-12);
    CHECK(std::abs(g.intercept - std::log(3.0)) <= 1e-11);
    CHECK(g.r_squared == doctest::Approx(1.0).epsilon(1e-12));

    const auto flat = sample([](double) { return 7.0; }, 10);
    const auto h = fit_loglog(flat, {TransformKind::log_j, 1.0});
    CHECK(std::abs(h.slope) <= 1e-15);
    CHECK(h.r_squared >= 0.0);
    CHECK(h.r_squared <= 1.0);
}

TEST_CASE("fit_loglog errors") {
    const std::vector<XYPoint> same_x{{2.0, 1.0}, {2.0, 2.0}, {2.0, 3.0}};
    CHECK_THROWS_AS(fit_loglog(same_x, {TransformKind::log_j, 1.0}), std::invalid_argument);
    const std::vector<XYPoint> two{{1.0, 1.0}, {2.0, 2.0}};
    CHECK_THROWS_AS(fit_loglog(two, {TransformKind::log_j, 1.0}), std::invalid_argument);
    const std::vector<XYPoint> neg{{1.0, 1.0}, {2.0, -2.0}, {3.0, 3.0}};
    CHECK_THROWS_AS(fit_loglog(neg, {TransformKind::log_j, 1.0}), std::invalid_argument);
    const auto pts = sample([](double x) { return x; }, 10);
    CHECK_THROWS_AS(fit_loglog(pts, {TransformKind::log_j, 1.0}, {0, 5}), std::invalid_argument);
    CHECK_THROWS_AS(fit_loglog(pts, {TransformKind::log_j, 1.0}, {5, 11}), std::invalid_argument);
    CHECK_THROWS_AS(fit_loglog(pts, {TransformKind::log_j, 1.0}, {5, 5}), std::invalid_argument);
}

TEST_CASE("detect_knee examples") {
    std::vector<double> s;
    for (int j = 1; j <= 300; ++j) {
        s.push_back(j <= 100 ? 1.0 : std::exp(-(j - 100.0)));
    }
    const auto k = detect_knee(synthetic(s));
    CHECK(k.crossed);
    CHECK(k.index >= 101);
    CHECK(k.index <= 102);
    CHECK(k.plateau == 1.0);

    const auto flat = detect_knee(synthetic(std::vector<double>(60, 2.0)));
    CHECK_FALSE(flat.crossed);
    CHECK(flat.index == 60);

    CHECK_THROWS(detect_knee(synthetic(std::vector<double>(19, 1.0))));
}

TEST_CASE("detect_knee is scale invariant") {
    std::vector<double> s;
    for (int j = 1; j <= 500; ++j) {
        s.push_back(1.0 / (1.0 + std::exp((j - 180.0) / 9.0)));
    }
    const auto base = detect_knee(synthetic(s)).index;
    for (double c : {1e-6, 0.37, 4.0, 1e8}) {
        std::vector<double> t = s;
        for (auto& v : t) {
            v *= c;
        }
        CHECK(detect_knee(synthetic(t)).index == base);
    }
}

TEST_CASE("Herglotz n=3, kappa=10 knee near kappa^2") {
    const auto rec = herglotz_singular_values(3, 10.0);
    const auto k = detect_knee(rec);
    CHECK(k.crossed);
    CHECK(k.index >= 50);
    CHECK(k.index <= 200);
    const auto summary = summarize_regions(rec);
    REQUIRE(summary.tail_fit.has_value());
    CHECK(summary.tail_fit->slope < 0.0);
    CHECK(summary.tail_fit->transform.name() == "j_pow(0.5)");
}

TEST_CASE("summarize_regions recovers an exact tail") {
    std::vector<double> s;
    for (int j = 1; j <= 2000; ++j) {
        s.push_back(std::exp(-std::sqrt(static_cast<double>(j)) / 10.0));
    }
    const auto summary = summarize_regions(synthetic(s, OperatorTag::herglotz_a, 3));
    REQUIRE(summary.tail_fit.has_value());
    CHECK(std::abs(summary.tail_fit->slope + 0.1) <= 1e-6);
    CHECK(summary.tail_fit->window.first == 2 * summary.knee.index);
    REQUIRE(summary.stable_fit.has_value());
    CHECK(summary.stable_fit->window.first == 2);
    CHECK(summary.stable_fit->window.second == summary.knee.index / 2);
    CHECK(summary.flags.empty());
}

TEST_CASE("summarize_regions flags collapsed windows") {
    std::vector<double> early(60);
    for (std::size_t j = 0; j < early.size(); ++j) {
        early[j] = std::exp(-static_cast<double>(j));
    }
    const auto a = summarize_regions(synthetic(early));
    CHECK_FALSE(a.stable_fit.has_value());
    CHECK(std::find(a.flags.begin(), a.flags.end(), "stable_window_collapsed") != a.flags.end());

    const auto b = summarize_regions(synthetic(std::vector<double>(80, 1.0)));
    CHECK_FALSE(b.tail_fit.has_value());
    CHECK(std::find(b.flags.begin(), b.flags.end(), "knee_not_crossed") != b.flags.end());
    CHECK(std::find(b.flags.begin(), b.flags.end(), "tail_window_collapsed") != b.flags.end());

    CHECK_THROWS(summarize_regions(synthetic(std::vector<double>(49, 1.0))));
}

TEST_CASE("modulus lower bound examples") {
    const ModulusParams unit{};
    CHECK(modulus_lower_bound(unit, std::exp(-2.0)) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(modulus_lower_bound(unit, 0.3) == doctest::Approx(0.5 / std::log(1.0 / 0.3)).epsilon(1e-15));
    CHECK(modulus_lower_bound(unit, 0.3) == doctest::Approx(0.4153).epsilon(1e-4));
    CHECK(modulus_validity_bound(unit) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));

    const ModulusParams specialized{1.0, 1.0, 0.1, 0.5, 0.5};
    const double want = (0.1 / std::sqrt(2.0)) / std::log(1000.0);
    CHECK(modulus_lower_bound(specialized, 1e-3) == doctest::Approx(want).epsilon(1e-14));

    CHECK_THROWS_AS(modulus_lower_bound(unit, 0.4), std::domain_error);
    CHECK_THROWS_AS(modulus_lower_bound(unit, 0.0), std::domain_error);
    CHECK_THROWS_AS(modulus_lower_bound({1.0, 1.0, 0.1, 1.0, 1.0}, 0.6), std::domain_error);
    CHECK_THROWS_AS(modulus_lower_bound({-1.0, 1.0, 1.0, 1.0, 1.0}, 0.1), std::domain_error);
    try {
        modulus_lower_bound({1.0, 1.0, 0.1, 1.0, 1.0}, 0.6);
    } catch (const std::domain_error& e) {
        CHECK(std::string(e.what()).find("h1") != std::string::npos);
    }
    try {
        modulus_lower_bound(unit, 0.4);
    } catch (const std::domain_error& e) {
        CHECK(std::string(e.what()).find("h2") != std::string::npos);
    }
}

TEST_CASE("modulus branches: monotone pieces and a continuous maximum") {
    const ModulusParams p{2.0, 3.0, 0.7, 0.5, 1.5};
    const double top = modulus_validity_bound(p);
    double prev_log = 0.0;
    double prev_val = modulus_lower_bound(p, 1e-9);
    const double exponent = p.gamma0 / p.beta;
    for (double t = 1e-9; t < top; t *= 1.05) {
        const double logarithmic =
            std::pow(2.0, -p.gamma0) * std::pow(p.mu, exponent) * std::pow(std::log(p.h2) + std::log(1.0 / t), -exponent);
        // (log(h2 / t))^{-gamma0/beta} grows with t
        CHECK(logarithmic >= prev_log);
        prev_log = logarithmic;
        const double v = modulus_lower_bound(p, t);
        CHECK(v == std::max(t / p.h1, logarithmic));
        // continuity: relative jump between neighbours stays at the grid scale
        CHECK(std::abs(v - prev_val) <= 0.06 * std::max(v, prev_val));
        prev_val = v;
    }
}
