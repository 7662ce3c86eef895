#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "pik/radial_profile.hpp"
#include "pik/space.hpp"

namespace pik {

/// Monte Carlo run configuration. The Brownian motion is generated with the
/// heat-kernel convention of this model: generator is the full Laplacian, so
/// increments carry variance 2 dt per coordinate. dt <= eps^2 / 10 keeps the
/// occupation time of the eps-ball resolvable by the stepper.
struct McConfig {
    std::size_t n_paths = 10000;
    double dt = 1e-3;
    double eps = 0.1;
    std::uint64_t seed = 0;
    SpacePoint start = SpacePoint::on_axis(1.0);
    bool bypass_potential = false;  // force h == 0: plain Brownian expectation

    void validate(double horizon) const;
};

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t n_effective = 0;        // (sum w)^2 / sum w^2 of the path weights
    double occupation_fraction = 0.0;   // paths that ever entered the ball
    double top_decile_weight_share = 0.0;  // heavy-tail diagnostic for alpha < 0
};

/// Fraction of the segment a -> b (linear interpolation of the position)
/// spent inside the centered ball of radius eps.
double step_occupancy(const std::array<double, 3>& a, const std::array<double, 3>& b, double eps);

/// Occupation time of the centered eps-ball along a discrete path with step
/// dt: dt times the step count inside, with linear refinement of boundary
/// crossings.
double occupation_time(std::span<const std::array<double, 3>> path, double dt, double eps);

/// Feynman-Kac estimate of the regularized flow: Euler paths of the
/// variance-2dt Brownian motion, weighted by
/// exp(h(3, alpha, eps) eps^-3 tau_eps), evaluated against f at the terminal
/// radius. Deterministic for a fixed config: per-path streams are derived
/// from (seed, path index) and the reduction order is fixed.
/// Throws numeric_error naming the offending path count if any weight
/// exponent overflows.
McEstimate fk_estimate(double alpha, double horizon, const RadialTestFunction& f,
                       const McConfig& mc);

}  // namespace pik
