#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace resolab {

enum class IdentityName { coarea1, coarea2, hs_norm, determinant, ah_limit, cross_check };

std::string_view to_string(IdentityName name);

struct IdentityReport {
    IdentityName name = IdentityName::coarea1;
    double lhs = 0.0;
    double rhs = 0.0;
    double rel_diff = 0.0;
    std::map<std::string, std::string> parameters;
};

/// |lhs - rhs| / max(|lhs|, |rhs|, 1e-300).
double relative_difference(double lhs, double rhs);

IdentityReport make_report(IdentityName name, double lhs, double rhs);

/// Radial profile h(r), r = |y|.
using RadialProfile = std::function<double(double)>;

/// Row-major 3x3 rotation.
using Rotation = std::array<double, 9>;

inline constexpr int default_identity_resolution = 48;

/// 2^{3-n} pi^{(n-1)/2} / Gamma((n-1)/2) and 2^{4-n} pi^{(n-1)/2} / Gamma((n-1)/2).
double coarea_constant(int dim_n, int which);

/// Double sphere integral of h(|z - x|) w(z . x), w = sqrt(1 - (z.x)^2) for
/// which = 1 and 1 for which = 2, against the ball integral of the coarea
/// formula. The inner sphere is parametrized around each outer node; a
/// rotation, if given, is applied to the outer nodes.
IdentityReport check_coarea(int dim_n, int which, const RadialProfile& h,
                            int resolution = default_identity_resolution,
                            const std::optional<Rotation>& rotation = std::nullopt);

/// kappa^{n-1} times the double sphere integral of |h_hat(kappa |omega - theta|)|^2
/// against the ball(2 kappa) integral with the coarea2 constant.
IdentityReport check_hs_norm(int dim_n, double kappa, const RadialProfile& h_hat,
                             int resolution = default_identity_resolution);

/// det(2I - u u^T - v v^T) by LU against the closed form
/// 2^{m-1}(2 - u.u - v.v + (u.u)(v.v)/2 - (u.v)^2/2). Requires 1 <= m <= 12.
IdentityReport check_determinant(std::span<const double> u, std::span<const double> v);

/// Lambda_ell(kappa) (lhs) against its limit 1/pi (rhs) for each kappa;
/// parameters carry the gap |lhs - rhs| and gap * kappa. Kappas must increase.
std::vector<IdentityReport> check_ah_limit(int dim_n, std::uint32_t ell, std::span<const double> kappas);

/// n = 3: ((2 pi)^3 Lambda_ell)^{1/2} (lhs) against the spherical-Bessel
/// form (rhs) for ell = 0 .. ell_max.
std::vector<IdentityReport> check_cross_formula(double kappa, std::uint32_t ell_max);

/// Smooth radial corpus used by the verification command and tests.
struct NamedProfile {
    std::string name;
    RadialProfile h;
};
std::vector<NamedProfile> smooth_profile_corpus();
/// Looks up a corpus profile by name ("const", "gauss", "quadratic", "cos").
RadialProfile profile_by_name(std::string_view name);

}  // namespace resolab
