#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace resolab {

/// Raised when a numerical procedure fails to reach its stopping criterion.
class ComputeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class OperatorTag {
    herglotz_a,      ///< normalized Herglotz operator
    herglotz_q,      ///< Herglotz operator without the kappa^{(n-1)/2} factor
    farfield_f,      ///< linearized far-field operator
    farfield_ftilde  ///< far-field operator scaled by kappa^{-(n-1)/2}
};

std::string_view to_string(OperatorTag tag);
OperatorTag operator_tag_from_string(std::string_view name);

inline bool is_herglotz(OperatorTag tag) {
    return tag == OperatorTag::herglotz_a || tag == OperatorTag::herglotz_q;
}

struct SpectrumEntry {
    std::size_t rank = 0;  // 1-based
    double sigma = 0.0;
    std::optional<std::uint32_t> degree;  // spherical-harmonic degree, Herglotz only

    friend bool operator==(const SpectrumEntry&, const SpectrumEntry&) = default;
};

/// Descending singular values of one operator at one (n, kappa).
struct SpectrumRecord {
    int dim_n = 3;
    double kappa = 1.0;
    OperatorTag tag = OperatorTag::herglotz_a;
    std::vector<SpectrumEntry> entries;
    std::map<std::string, std::string> method_meta;

    std::size_t size() const { return entries.size(); }
    std::vector<double> sigmas() const;
    /// sigma_j for 1-based rank j.
    double sigma(std::size_t rank) const { return entries.at(rank - 1).sigma; }

    /// Throws std::logic_error naming the first violated invariant.
    void validate() const;

    friend bool operator==(const SpectrumRecord&, const SpectrumRecord&) = default;
};

}  // namespace resolab
