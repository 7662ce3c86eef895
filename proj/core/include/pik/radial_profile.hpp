#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

namespace pik {

/// Radial test function on (0, inf): a member of the weighted cone when
/// 0 <= f(r) <= C/r everywhere and f(r) <= C r^-xi with xi < 1 near the
/// origin. Carries quadrature metadata (support, breakpoints, smallest
/// feature scale) so integrators can resolve it reliably. Evaluation must be
/// side-effect free; profiles are shared freely across threads.
struct RadialTestFunction {
    std::function<double(double)> eval;
    double dominating_constant = 1.0;                              // C
    double singularity_exponent = 0.0;                             // xi in [0, 1]
    double support_max = std::numeric_limits<double>::infinity();  // f == 0 beyond
    double feature_scale = std::numeric_limits<double>::infinity();
    std::vector<double> breakpoints;
    std::string description;

    double operator()(double r) const { return eval(r); }

    /// xi < 1 is required for membership in the cone Phi.
    bool in_phi_cone() const { return singularity_exponent < 1.0; }
};

/// Indicator of [a, b] with quintic-smoothstep edges of the given width
/// (the cone admits continuous functions only). a == 0 drops the inner edge.
RadialTestFunction mollified_indicator(double a, double b, double width, double amplitude = 1.0);

/// amplitude * p_t0(r): Gaussian profile matched to the heat kernel, so
/// convolving with p_t has the closed form amplitude * p_{t+t0}(rx).
RadialTestFunction heat_gaussian(double t0, double amplitude = 1.0);

/// Smooth bump at `center` of half-width `width`, normalized to unit mass as
/// a measure on R^3 (int 4 pi r^2 f dr = 1). Requires center > width > 0.
RadialTestFunction radial_bump(double center, double width);

/// Mollified constant c on a ball of the given radius; the truncation family
/// f_R used for total-mass studies.
RadialTestFunction constant_ball(double value, double radius, double width);

/// The reference weight 1/r itself (xi = 1: a weight, not a cone member).
RadialTestFunction reference_weight_profile();

/// amplitude * r^-xi tapered to zero at `radius`; xi in [0, 1).
RadialTestFunction power_singularity(double xi, double radius, double width,
                                     double amplitude = 1.0);

/// theta * f(kappa * r).
RadialTestFunction scaled_profile(const RadialTestFunction& f, double arg_scale, double val_scale);

/// f(r)^power for f >= 0 (used for the branching nonlinearity).
RadialTestFunction powered_profile(const RadialTestFunction& f, double power);

/// Construct from a JSON description {"profile": name, ...parameters...};
/// optional "arg_scale"/"val_scale" wrap any profile.
RadialTestFunction radial_profile_from_json(const nlohmann::json& spec);

}  // namespace pik
