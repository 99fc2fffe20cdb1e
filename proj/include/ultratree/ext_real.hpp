#pragma once

#include <cmath>
#include <compare>
#include <limits>
#include <ostream>

#include "ultratree/errors.hpp"

namespace ultratree {

/// Extended real in [-inf, +inf] with the usual conventions for calculating
/// with infinity. NaN is never representable; 0 * inf and inf - inf raise
/// NumericDomainError instead of producing one.
class ExtReal {
public:
    constexpr ExtReal() = default;
    ExtReal(double v) : v_(v) {  // NOLINT: implicit by intent
        if (std::isnan(v)) throw NumericDomainError("NaN is not an extended real");
    }

    static ExtReal infinity() { return ExtReal(std::numeric_limits<double>::infinity()); }

    bool is_finite() const noexcept { return std::isfinite(v_); }
    bool is_infinite() const noexcept { return std::isinf(v_); }
    double value() const noexcept { return v_; }
    explicit operator double() const noexcept { return v_; }

    friend bool operator==(ExtReal a, ExtReal b) noexcept { return a.v_ == b.v_; }
    friend std::partial_ordering operator<=>(ExtReal a, ExtReal b) noexcept { return a.v_ <=> b.v_; }

    friend ExtReal operator*(ExtReal a, ExtReal b) {
        if ((a.v_ == 0.0 && b.is_infinite()) || (b.v_ == 0.0 && a.is_infinite()))
            throw NumericDomainError("0 * inf is indeterminate");
        return ExtReal(a.v_ * b.v_);
    }

    friend ExtReal operator/(ExtReal a, ExtReal b) {
        if (a.v_ == 0.0 && b.v_ == 0.0) throw NumericDomainError("0 / 0 is indeterminate");
        if (a.is_infinite() && b.is_infinite()) throw NumericDomainError("inf / inf is indeterminate");
        if (b.v_ == 0.0) return a.v_ > 0 ? infinity() : ExtReal(-std::numeric_limits<double>::infinity());
        return ExtReal(a.v_ / b.v_);
    }

    friend ExtReal operator+(ExtReal a, ExtReal b) {
        if (a.is_infinite() && b.is_infinite() && (a.v_ > 0) != (b.v_ > 0))
            throw NumericDomainError("inf - inf is indeterminate");
        return ExtReal(a.v_ + b.v_);
    }

    friend std::ostream& operator<<(std::ostream& os, ExtReal x) {
        if (x.is_infinite()) return os << (x.v_ > 0 ? "inf" : "-inf");
        return os << x.v_;
    }

private:
    double v_ = 0.0;
};

}  // namespace ultratree
