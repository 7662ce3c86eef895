#pragma once

#include "pik/quadrature.hpp"
#include "pik/space.hpp"

namespace pik {

/// Free heat kernel (4 pi t)^(-3/2) exp(-|y-x|^2 / 4t). Symmetric in (x, y).
double free_kernel(double t, const SpacePoint& x, const SpacePoint& y);

/// Radial form p_t(r) = (4 pi t)^(-3/2) exp(-r^2 / 4t).
double free_kernel_radial(double t, double r);

/// Tail integral I(alpha, t, s) = int_0^inf du exp(-4 pi alpha u) p_t(u + s).
///
/// Production path: the closed form
///   (4 pi t)^(-3/2) sqrt(pi t) exp(-s^2/4t) erfcx((s + 8 pi alpha t) / (2 sqrt t)),
/// with the negative-argument branch folded into the combined exponent
/// 4 pi alpha s + 16 pi^2 alpha^2 t so no intermediate overflows before the
/// result itself does. Throws magnitude_overflow (carrying the log magnitude)
/// when the value exceeds double range.
double laplace_tail_integral(double alpha, double t, double s, const KernelEvalConfig& cfg = {});

/// Independent oracle for the same integral: adaptive quadrature with
/// breakpoints around the interior maximum. Only valid while the integrand
/// peak is representable; use the log variant beyond.
double laplace_tail_integral_quadrature(double alpha, double t, double s,
                                        const KernelEvalConfig& cfg = {});

/// log I(alpha, t, s); finite for every finite alpha.
double laplace_tail_integral_log(double alpha, double t, double s, const KernelEvalConfig& cfg = {});

/// Quadrature oracle in log space (peak-normalized integrand).
double laplace_tail_integral_log_quadrature(double alpha, double t, double s,
                                            const KernelEvalConfig& cfg = {});

/// Bracket B(alpha, t, s) = p_t(s) - 4 pi alpha I(alpha, t, s), the radial
/// profile shared by the non-free kernel terms and the limit kernel.
/// Nonnegative for every alpha. alpha = 0 degenerates to p_t(s).
double kernel_bracket(double alpha, double t, double s, const KernelEvalConfig& cfg = {});

/// log B(alpha, t, s); finite linear range is not required.
double kernel_bracket_log(double alpha, double t, double s, const KernelEvalConfig& cfg = {});

/// Non-free part of the interaction kernel, (2t / (rx ry)) B(alpha, t, rx+ry).
/// Depends on x and y only through their radii.
double interaction_nonfree(double alpha, double t, double rx, double ry,
                           const KernelEvalConfig& cfg = {});

/// Term-by-term breakdown of the one-point-interaction heat kernel.
struct KernelTerms {
    double free_part = 0.0;   // p_t(x, y)
    double image_part = 0.0;  // (2t / |x||y|) p_t(|x| + |y|)
    double alpha_part = 0.0;  // -(8 pi alpha t / |x||y|) I(alpha, t, |x| + |y|), signed
    double total() const { return free_part + image_part + alpha_part; }
};

KernelTerms interaction_kernel_terms(double alpha, double t, double rx, double ry, double dist,
                                     const KernelEvalConfig& cfg = {});

/// One-point-interaction heat kernel p_t^alpha(x, y) in reduced coordinates
/// (t, |x|, |y|, |x - y|). Strictly positive, symmetric under swapping x, y.
double interaction_kernel_reduced(double alpha, double t, double rx, double ry, double dist,
                                  const KernelEvalConfig& cfg = {});

double interaction_kernel(double alpha, double t, const SpacePoint& x, const SpacePoint& y,
                          const KernelEvalConfig& cfg = {});

/// log p_t^alpha(x, y); usable in the strongly negative alpha regime where the
/// kernel explodes beyond double range.
double interaction_kernel_log(double alpha, double t, const SpacePoint& x, const SpacePoint& y,
                              const KernelEvalConfig& cfg = {});

/// Residual of the scaling identity
///   p_t^alpha(x, y) - k^(3/2) p_{kt}^{alpha/sqrt k}(sqrt k x, sqrt k y).
/// Exact algebra; the returned value measures special-function rounding only.
double verify_scaling(double alpha, double t, double k, const SpacePoint& x, const SpacePoint& y,
                      const KernelEvalConfig& cfg = {});

/// Regularizer h(3, alpha, eps) = (pi^2/4) eps - 8 pi^2 alpha eps^2.
double regularizer_h(double alpha, double eps);

/// Scattering length -1/(4 pi alpha), defined for alpha < 0 only.
double scattering_length(double alpha);

}  // namespace pik
