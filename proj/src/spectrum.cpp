#include "resolab/spectrum.hpp"

#include <array>
#include <utility>

namespace resolab {

namespace {
constexpr std::array<std::pair<OperatorTag, std::string_view>, 4> tag_names{{
    {OperatorTag::herglotz_a, "Herglotz_A"},
    {OperatorTag::herglotz_q, "Herglotz_Q"},
    {OperatorTag::farfield_f, "Farfield_F"},
    {OperatorTag::farfield_ftilde, "Farfield_Ftilde"},
}};
}  // namespace

std::string_view to_string(OperatorTag tag) {
    for (const auto& [t, name] : tag_names) {
        if (t == tag) {
            return name;
        }
    }
    return "unknown";
}

OperatorTag operator_tag_from_string(std::string_view name) {
    for (const auto& [t, n] : tag_names) {
        if (n == name) {
            return t;
        }
    }
    throw std::invalid_argument("unknown operator tag: " + std::string(name));
}

std::vector<double> SpectrumRecord::sigmas() const {
    std::vector<double> out;
    out.reserve(entries.size());
    for (const auto& e : entries) {
        out.push_back(e.sigma);
    }
    return out;
}

void SpectrumRecord::validate() const {
    if (dim_n != 2 && dim_n != 3) {
        throw std::logic_error("SpectrumRecord: dim_n must be 2 or 3");
    }
    if (!(kappa > 0.0)) {
        throw std::logic_error("SpectrumRecord: kappa must be positive");
    }
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto& e = entries[i];
        if (e.rank != i + 1) {
            throw std::logic_error("SpectrumRecord: ranks must be contiguous from 1");
        }
        if (!(e.sigma > 0.0)) {
            throw std::logic_error("SpectrumRecord: sigma must be positive");
        }
        if (i > 0 && e.sigma > entries[i - 1].sigma) {
            throw std::logic_error("SpectrumRecord: entries must be non-increasing");
        }
    }
    if (is_herglotz(tag)) {
        // Each degree occupies one contiguous block of N_ell equal values.
        std::size_t i = 0;
        while (i < entries.size()) {
            if (!entries[i].degree) {
                throw std::logic_error("SpectrumRecord: Herglotz entries must carry a degree");
            }
            const std::uint32_t ell = *entries[i].degree;
            const std::size_t want = (dim_n == 2) ? (ell == 0 ? 1 : 2) : 2 * ell + 1;
            std::size_t j = i;
            while (j < entries.size() && entries[j].degree == entries[i].degree) {
                if (entries[j].sigma != entries[i].sigma) {
                    throw std::logic_error("SpectrumRecord: unequal values within one degree");
                }
                ++j;
            }
            if (j - i != want) {
                throw std::logic_error("SpectrumRecord: degree block has wrong multiplicity");
            }
            i = j;
        }
    }
}

}  // namespace resolab
