#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

namespace pik {

/// Point of the punctured space R^3 \ {0}. All kernels are singular at the
/// origin, so the zero vector is rejected on construction.
struct SpacePoint {
    std::array<double, 3> coords{};

    SpacePoint() = delete;
    explicit SpacePoint(std::array<double, 3> c) : coords(c) {
        if (coords[0] == 0.0 && coords[1] == 0.0 && coords[2] == 0.0)
            throw std::domain_error("SpacePoint: origin is excluded from the punctured space");
    }
    SpacePoint(double x, double y, double z) : SpacePoint(std::array<double, 3>{x, y, z}) {}

    /// Point at radius r on the first coordinate axis.
    static SpacePoint on_axis(double r) { return SpacePoint(r, 0.0, 0.0); }

    double norm() const {
        return std::sqrt(coords[0] * coords[0] + coords[1] * coords[1] + coords[2] * coords[2]);
    }

    SpacePoint scaled(double factor) const {
        return SpacePoint(factor * coords[0], factor * coords[1], factor * coords[2]);
    }
};

inline double distance(const SpacePoint& a, const SpacePoint& b) {
    const double dx = b.coords[0] - a.coords[0];
    const double dy = b.coords[1] - a.coords[1];
    const double dz = b.coords[2] - a.coords[2];
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

/// Interaction parameter on the extended line [-inf, +inf]. Arithmetic is
/// legal only for finite values; the infinite symbols exist because the limit
/// kernel extends to the endpoints.
class ExtendedAlpha {
public:
    enum class Kind { finite, plus_inf, minus_inf };

    ExtendedAlpha(double v) : kind_(Kind::finite), value_(v) {
        if (!std::isfinite(v)) throw std::domain_error("ExtendedAlpha: use plus_infinity()/minus_infinity()");
    }
    static ExtendedAlpha plus_infinity() { return ExtendedAlpha(Kind::plus_inf); }
    static ExtendedAlpha minus_infinity() { return ExtendedAlpha(Kind::minus_inf); }

    bool is_finite() const noexcept { return kind_ == Kind::finite; }
    bool is_plus_infinity() const noexcept { return kind_ == Kind::plus_inf; }
    bool is_minus_infinity() const noexcept { return kind_ == Kind::minus_inf; }

    double value() const {
        if (!is_finite()) throw std::domain_error("ExtendedAlpha: arithmetic on an infinite value");
        return value_;
    }

private:
    explicit ExtendedAlpha(Kind k) : kind_(k), value_(0.0) {}
    Kind kind_;
    double value_;
};

}  // namespace pik
