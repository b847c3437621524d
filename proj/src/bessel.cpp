#include "resolab/bessel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace resolab {

namespace {

constexpr double pi = std::numbers::pi;

// Rescaling bounds for the backward recurrence.
constexpr double rescale_trigger = 0x1p+800;
constexpr int rescale_exponent = -800;

// Hankel asymptotics are used once x clears both bounds; below them the
// expansion's smallest term is not negligible at double precision.
constexpr double hankel_min_x = 25.0;

bool series_regime(double nu, double x) { return 0.25 * x * x <= nu + 1.0; }

bool hankel_regime(double nu, double x) { return x >= hankel_min_x && x >= nu * nu; }

BesselValue finish(double v) {
    if (!std::isfinite(v)) {
        return {v, false};
    }
    if (std::abs(v) < bessel_underflow_threshold) {
        return {0.0, true};
    }
    return {v, false};
}

double j_half(double x) { return std::sqrt(2.0 / (pi * x)) * std::sin(x); }

double j_three_halves(double x) {
    return std::sqrt(2.0 / (pi * x)) * (std::sin(x) / x - std::cos(x));
}

// Starting order for Miller's algorithm: far enough beyond both the highest
// requested order and the turning point x that J_start / J_top < 1e-17.
std::size_t miller_start(std::size_t top, double x) {
    const double reach = std::max(static_cast<double>(top), std::ceil(x));
    return static_cast<std::size_t>(reach + 30.0 + 2.0 * std::ceil(std::sqrt(40.0 * reach)));
}

// Backward recurrence over orders base + k, k = start .. 0. Keeps the
// unnormalized values for k < count together with the rescaling exponent in
// force when each was stored; `scale` maps values at the final exponent to
// true J values.
struct MillerResult {
    std::vector<double> mantissa;
    std::vector<int> exponent;
    double scale = 1.0;
    int final_exponent = 0;
};

MillerResult miller(bool half, std::size_t count, double x) {
    const double base = half ? 0.5 : 0.0;
    const std::size_t start = miller_start(count == 0 ? 0 : count - 1, x);

    MillerResult res;
    res.mantissa.assign(count, 0.0);
    res.exponent.assign(count, 0);

    double upper = 0.0;   // J_{k+1}
    double current = 1.0; // J_k
    int exponent = 0;     // total rescaling applied so far
    double even_sum = 0.0;

    auto record = [&](std::size_t k, double value) {
        if (k < count) {
            res.mantissa[k] = value;
            res.exponent[k] = exponent;
        }
        if (!half && k % 2 == 0) {
            even_sum += (k == 0 ? 1.0 : 2.0) * value;
        }
    };

    record(start, current);
    for (std::size_t k = start; k > 0; --k) {
        const double mu = base + static_cast<double>(k);
        const double lower = (2.0 * mu / x) * current - upper;
        upper = current;
        current = lower;
        if (std::abs(current) > rescale_trigger) {
            current = std::ldexp(current, rescale_exponent);
            upper = std::ldexp(upper, rescale_exponent);
            even_sum = std::ldexp(even_sum, rescale_exponent);
            exponent += rescale_exponent;
        }
        record(k - 1, current);
    }

    res.final_exponent = exponent;
    if (!half) {
        res.scale = 1.0 / even_sum;
    } else {
        // Normalize against whichever closed form is larger at x.
        double exact0 = 0.0;
        double exact1 = 0.0;
        if (x < 1.0) {
            exact0 = detail::bessel_series(0.5, x);
            exact1 = detail::bessel_series(1.5, x);
        } else {
            exact0 = j_half(x);
            exact1 = j_three_halves(x);
        }
        // Unnormalized values at k = 0, 1 are `current` and `upper`, both at `exponent`.
        if (std::abs(exact0) >= std::abs(exact1)) {
            res.scale = exact0 / current;
        } else {
            res.scale = exact1 / upper;
        }
    }
    return res;
}

double miller_value(const MillerResult& r, std::size_t k) {
    const double v = r.mantissa[k] * r.scale;
    return std::ldexp(v, r.final_exponent - r.exponent[k]);
}

std::array<double, 2> integer_start_pair(double x) {
    if (hankel_regime(1.0, x)) {
        return {detail::bessel_hankel(BesselOrder::integer(0), x),
                detail::bessel_hankel(BesselOrder::integer(1), x)};
    }
    const auto r = miller(false, 2, x);
    return {miller_value(r, 0), miller_value(r, 1)};
}

}  // namespace

namespace detail {

double bessel_series(double nu, double x) {
    if (x == 0.0) {
        return nu == 0.0 ? 1.0 : 0.0;
    }
    const double log_lead = nu * std::log(0.5 * x) - std::lgamma(nu + 1.0);
    if (log_lead < std::log(bessel_underflow_threshold) - 1.0) {
        return 0.0;
    }
    const double q = 0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 500; ++k) {
        term *= -q / (static_cast<double>(k) * (nu + static_cast<double>(k)));
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) {
            break;
        }
    }
    return std::exp(log_lead) * sum;
}

double bessel_hankel(BesselOrder order, double x) {
    const double nu = order.value();
    const double mu = 4.0 * nu * nu;
    double p = 1.0;
    double q = 0.0;
    double term = 1.0;
    double previous = std::numeric_limits<double>::infinity();
    for (int k = 1; k < 1000; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= (mu - odd * odd) / (static_cast<double>(k) * 8.0 * x);
        if (term == 0.0) {
            break;  // terminating expansion (half-integer order)
        }
        if (std::abs(term) > previous) {
            break;  // asymptotic series started diverging
        }
        previous = std::abs(term);
        // a_k / x^k enters P (even k) or Q (odd k) with sign (-1)^(k/2).
        const double sign = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
        if (k % 2 == 0) {
            p += sign * term;
        } else {
            q += sign * term;
        }
        if (std::abs(term) < 1e-17 * (std::abs(p) + std::abs(q))) {
            break;
        }
    }
    // chi = x - (2 nu + 1) pi / 4; the phase offset is a multiple of pi / 4.
    static constexpr double r = std::numbers::sqrt2 / 2.0;
    static constexpr std::array<double, 8> cos_table{1.0, r, 0.0, -r, -1.0, -r, 0.0, r};
    static constexpr std::array<double, 8> sin_table{0.0, r, 1.0, r, 0.0, -r, -1.0, -r};
    const unsigned m = (order.twice() + 1u) % 8u;
    const double cx = std::cos(x);
    const double sx = std::sin(x);
    const double cos_chi = cx * cos_table[m] + sx * sin_table[m];
    const double sin_chi = sx * cos_table[m] - cx * sin_table[m];
    return std::sqrt(2.0 / (pi * x)) * (p * cos_chi - q * sin_chi);
}

}  // namespace detail

BesselValue bessel_j_checked(BesselOrder order, double x) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
        throw std::domain_error("bessel_j: argument must be finite and non-negative");
    }
    const double nu = order.value();
    if (x == 0.0) {
        return {order.twice() == 0 ? 1.0 : 0.0, false};
    }
    if (series_regime(nu, x)) {
        return finish(detail::bessel_series(nu, x));
    }
    if (hankel_regime(nu, x)) {
        return finish(detail::bessel_hankel(order, x));
    }
    const std::size_t steps = order.steps_from_base();
    if (x >= nu) {
        // Upward recurrence is stable while the order stays below x.
        double lower = 0.0;
        double current = 0.0;
        double base = 0.0;
        if (order.is_half_integer()) {
            lower = j_half(x);
            current = j_three_halves(x);
            base = 0.5;
        } else {
            const auto pair = integer_start_pair(x);
            lower = pair[0];
            current = pair[1];
        }
        if (steps == 0) {
            return finish(lower);
        }
        for (std::size_t k = 1; k < steps; ++k) {
            const double mu = base + static_cast<double>(k);
            const double next = (2.0 * mu / x) * current - lower;
            lower = current;
            current = next;
        }
        return finish(current);
    }
    const auto r = miller(order.is_half_integer(), steps + 1, x);
    return finish(miller_value(r, steps));
}

std::vector<double> bessel_j_sequence(bool half_integer_family, std::size_t count, double x) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
        throw std::domain_error("bessel_j_sequence: argument must be finite and non-negative");
    }
    std::vector<double> out(count, 0.0);
    if (count == 0) {
        return out;
    }
    if (x == 0.0) {
        out[0] = half_integer_family ? 0.0 : 1.0;
        return out;
    }
    const auto r = miller(half_integer_family, count, x);
    for (std::size_t k = 0; k < count; ++k) {
        out[k] = finish(miller_value(r, k)).value;
    }
    return out;
}

double spherical_j(std::uint32_t ell, double x) {
    if (!(x >= 0.0)) {
        throw std::domain_error("spherical_j: argument must be non-negative");
    }
    if (x == 0.0) {
        return ell == 0 ? 1.0 : 0.0;
    }
    const double nu = static_cast<double>(ell) + 0.5;
    if (series_regime(nu, x)) {
        // Series for j_ell directly avoids the 1/sqrt(x) prefactor at small x:
        // j_ell(x) = x^ell / (2 ell + 1)!! * sum_k (-x^2/2)^k / (k! (2ell+3)(2ell+5)..(2ell+2k+1)).
        double log_lead = static_cast<double>(ell) * std::log(x);
        for (std::uint32_t i = 1; i <= 2 * ell + 1; i += 2) {
            log_lead -= std::log(static_cast<double>(i));
        }
        if (log_lead < std::log(bessel_underflow_threshold) - 1.0) {
            return 0.0;
        }
        const double q = 0.5 * x * x;
        double term = 1.0;
        double sum = 1.0;
        for (int k = 1; k < 500; ++k) {
            term *= -q / (static_cast<double>(k) * (2.0 * ell + 2.0 * k + 1.0));
            sum += term;
            if (std::abs(term) < 1e-17 * std::abs(sum)) {
                break;
            }
        }
        return finish(std::exp(log_lead) * sum).value;
    }
    return std::sqrt(pi / (2.0 * x)) * bessel_j(BesselOrder::half_integer(ell), x);
}

double gamma_half_integer(std::uint32_t twice_arg) {
    if (twice_arg == 0) {
        throw std::domain_error("gamma_half_integer: argument must be positive");
    }
    // Walk up from Gamma(1/2) or Gamma(1) in unit steps.
    double value = (twice_arg % 2 == 1) ? std::sqrt(pi) : 1.0;
    for (std::uint32_t k = (twice_arg % 2 == 1) ? 1 : 2; k + 2 <= twice_arg; k += 2) {
        value *= 0.5 * static_cast<double>(k);
    }
    return value;
}

}  // namespace resolab
