#pragma once

#include <cstdint>
#include <functional>

#include "pik/measure.hpp"
#include "pik/quadrature.hpp"
#include "pik/radial_profile.hpp"
#include "pik/space.hpp"

namespace pik {

/// Reference weight phi(x) = 1/|x|.
double reference_weight(const SpacePoint& x);
double reference_weight_radial(double r);

/// Weighted norm (int phi |f|^rho dx)^(1/rho) for rho in (1, 2); by radial
/// reduction this is (4 pi int_0^inf r f(r)^rho dr)^(1/rho). `finite` is false
/// when the dyadic tail scan certifies divergence ("not in H").
struct PhiNorm {
    double rho = 1.5;
    double value = 0.0;
    bool finite = true;
};
PhiNorm phi_norm(const RadialTestFunction& f, double rho, const KernelEvalConfig& cfg = {});

/// <mu, f> = sum_i w_i f(|x_i|).
double pair(const AtomicMeasure& mu, const RadialTestFunction& f);

/// int f(|y|) p_t(x, y) dy for |x| = rx, reduced to one dimension via
/// (1/(rx sqrt(4 pi t))) int_0^inf r f(r) [e^{-(rx-r)^2/4t} - e^{-(rx+r)^2/4t}] dr.
double radial_integral_against_free_kernel(double t, double rx, const RadialTestFunction& f,
                                           const KernelEvalConfig& cfg = {});

/// log of the same integral (for regimes outside double range).
double radial_integral_against_free_kernel_log(double t, double rx, const RadialTestFunction& f,
                                               const KernelEvalConfig& cfg = {});

/// (8 pi t / rx) int_0^inf r f(r) [p_t(r + rx) - 4 pi alpha I(alpha, t, r + rx)] dr:
/// the non-free kernel terms integrated against a radial function (the
/// angular integration is exact).
double radial_integral_against_interaction_terms(double t, double rx, const RadialTestFunction& f,
                                                 double alpha, const KernelEvalConfig& cfg = {});

/// The two summands separately: image = (8 pi t / rx) int r f p_t(r+rx) dr and
/// the signed alpha term; their sum is the combined integral above (which is
/// evaluated in stable bracket form, not by adding these).
double radial_integral_against_image_term(double t, double rx, const RadialTestFunction& f,
                                          const KernelEvalConfig& cfg = {});
double radial_integral_against_alpha_term(double t, double rx, const RadialTestFunction& f,
                                          double alpha, const KernelEvalConfig& cfg = {});

/// log of the combined nonnegative interaction integral.
double radial_integral_against_interaction_terms_log(double t, double rx,
                                                     const RadialTestFunction& f, double alpha,
                                                     const KernelEvalConfig& cfg = {});

/// Naive spherical-product quadrature of int f(|y|) p_t(x, y) dy (outer radial,
/// inner polar-angle integral). Cross-check for the radial reduction.
double spherical_product_integral_against_free_kernel(double t, double rx,
                                                      const RadialTestFunction& f,
                                                      const KernelEvalConfig& cfg = {});

/// Monte Carlo estimate of int phi(y) p_t(x, y) dy by sampling the Gaussian
/// p_t(x, .) directly. This is the supported path for non-radial phi.
struct McIntegral {
    double mean = 0.0;
    double std_error = 0.0;
};
McIntegral monte_carlo_integral_against_free_kernel(
    double t, const SpacePoint& x, const std::function<double(const SpacePoint&)>& phi,
    std::size_t n_samples, std::uint64_t seed);

}  // namespace pik
