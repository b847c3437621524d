#pragma once

#include <cstdio>
#include <string>

namespace resolab {

/// Shortest-safe round-trip decimal form (17 significant digits).
inline std::string format_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace resolab
