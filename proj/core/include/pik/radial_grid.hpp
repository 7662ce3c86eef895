#pragma once

#include <array>
#include <vector>

#include "pik/radial_profile.hpp"

namespace pik {

/// Log-spaced radii accumulating at the origin end.
std::vector<double> log_spaced_radii(double r_min, double r_max, int count);

/// Radial function sampled on a positive grid. Interpolation runs on
/// (log r, r * f(r)): the product is bounded through an integrable 1/r
/// singularity, so constant extrapolation of it below the first node is the
/// c/r behavior the cone prescribes. Cubic Hermite with finite-difference
/// slopes keeps evaluation linear in the nodal data (needed by the
/// discretized semigroup operator). Evaluates to 0 beyond the last node.
class RadialFunctionGrid {
public:
    RadialFunctionGrid(std::vector<double> radii, std::vector<double> values);

    double operator()(double r) const;

    const std::vector<double>& radii() const noexcept { return radii_; }
    const std::vector<double>& values() const noexcept { return values_; }

    /// Coefficient c of the c/r extrapolation below the first node.
    double near_origin_coefficient() const { return y_.front(); }

    /// Nodal weights of the linear interpolation map: f(r) = sum w_k f(r_{i_k}).
    struct Stencil {
        std::array<int, 4> index;
        std::array<double, 4> weight;
        int size = 0;
    };
    Stencil stencil(double r) const;

    /// View as a test function (for feeding grid data back through the
    /// adaptive quadratures).
    RadialTestFunction as_test_function() const;

private:
    std::vector<double> radii_;
    std::vector<double> values_;
    std::vector<double> x_;  // log radii
    std::vector<double> y_;  // r * f(r)
};

}  // namespace pik
