#pragma once

#include <algorithm>
#include <cmath>

namespace ultratree {

/// Comparison slack for derived reals. Raw stored entries compare exactly;
/// anything that went through exp/log or a sum of several terms uses this.
struct Tolerance {
    double rel = 1e-9;
    double abs = 1e-12;

    double slack(double a, double b) const noexcept {
        double scale = std::max(std::abs(a), std::abs(b));
        if (!std::isfinite(scale)) return abs;
        return std::max(abs, rel * scale);
    }

    bool equal(double a, double b) const noexcept {
        if (a == b) return true;  // also covers matching infinities
        if (!std::isfinite(a) || !std::isfinite(b)) return false;
        return std::abs(a - b) <= slack(a, b);
    }

    bool less_equal(double a, double b) const noexcept { return a <= b || equal(a, b); }

    /// Slack for quantities living on the log scale (heights, Gromov
    /// products). A relative error `rel` on a distance is an absolute error of
    /// about `rel` on its logarithm, so the scale floor is 1.
    double log_slack(double a, double b) const noexcept {
        double scale = std::max({1.0, std::abs(a), std::abs(b)});
        if (!std::isfinite(scale)) scale = 1.0;
        return std::max(abs, rel * scale);
    }

    bool log_equal(double a, double b) const noexcept {
        if (a == b) return true;
        if (!std::isfinite(a) || !std::isfinite(b)) return false;
        return std::abs(a - b) <= log_slack(a, b);
    }

    bool log_less_equal(double a, double b) const noexcept { return a <= b || log_equal(a, b); }
};

inline constexpr Tolerance kDefaultTolerance{};

}  // namespace ultratree
