#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace resolab {

/// Order of a Bessel function restricted to integers and half-integers.
/// Stored as twice the order so both families are exact.
class BesselOrder {
public:
    static constexpr std::uint32_t max_twice_order = 4096;

    constexpr explicit BesselOrder(std::uint32_t twice_order) : twice_(twice_order) {
        if (twice_order > max_twice_order) {
            throw std::domain_error("BesselOrder: twice_order exceeds 4096");
        }
    }

    static constexpr BesselOrder integer(std::uint32_t n) { return BesselOrder(2 * n); }
    /// Order ell + 1/2.
    static constexpr BesselOrder half_integer(std::uint32_t ell) { return BesselOrder(2 * ell + 1); }

    constexpr std::uint32_t twice() const { return twice_; }
    constexpr double value() const { return 0.5 * static_cast<double>(twice_); }
    constexpr bool is_half_integer() const { return (twice_ & 1u) != 0; }
    /// Lowest member of the recurrence family (0 or 1/2) counted in unit steps.
    constexpr std::uint32_t steps_from_base() const { return twice_ / 2; }

    friend constexpr bool operator==(BesselOrder, BesselOrder) = default;

private:
    std::uint32_t twice_;
};

/// Magnitudes below this are flushed to zero and flagged.
inline constexpr double bessel_underflow_threshold = 1e-290;

struct BesselValue {
    double value = 0.0;
    bool underflow = false;
};

/// J_nu(x) for integer or half-integer nu and x >= 0.
/// Throws std::domain_error for x < 0 or non-finite x.
BesselValue bessel_j_checked(BesselOrder order, double x);

inline double bessel_j(BesselOrder order, double x) { return bessel_j_checked(order, x).value; }

/// J_{base + k}(x) for k = 0 .. count-1, where base is 0 (integer family)
/// or 1/2 (half-integer family). One backward recurrence serves every order.
std::vector<double> bessel_j_sequence(bool half_integer_family, std::size_t count, double x);

/// Spherical Bessel function j_ell(x) = sqrt(pi / (2x)) J_{ell+1/2}(x).
double spherical_j(std::uint32_t ell, double x);

/// Gamma(k / 2) for k >= 1 from Gamma(1) = 1, Gamma(1/2) = sqrt(pi) and
/// Gamma(z + 1) = z Gamma(z).
double gamma_half_integer(std::uint32_t twice_arg);

namespace detail {
// Exposed for tests: the individual evaluation branches.
double bessel_series(double nu, double x);
double bessel_hankel(BesselOrder order, double x);
}  // namespace detail

}  // namespace resolab
