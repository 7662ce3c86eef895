#include "pik/kernel.hpp"

#include <cmath>
#include <limits>

#include "pik/errors.hpp"
#include "pik/special_functions.hpp"

namespace pik {

namespace {

constexpr double pi = 3.14159265358979323846;

void require_time(double t) {
    if (!(t > 0.0)) throw std::domain_error("kernel: time must be strictly positive");
}

void require_alpha_finite_nonzero(double alpha) {
    if (!std::isfinite(alpha)) throw std::domain_error("kernel: alpha must be finite");
    if (alpha == 0.0) throw std::domain_error("laplace_tail_integral: alpha must be nonzero");
}

double log_free_radial(double t, double r) { return -1.5 * std::log(4.0 * pi * t) - r * r / (4.0 * t); }

// Combined exponent z^2 - s^2/4t of the reflection branch, computed without
// cancellation: 4 pi alpha s + 16 pi^2 alpha^2 t.
double combined_exponent(double alpha, double t, double s) {
    return 4.0 * pi * alpha * s + 16.0 * pi * pi * alpha * alpha * t;
}

double tail_prefactor(double t) {
    return std::pow(4.0 * pi * t, -1.5) * std::sqrt(pi * t);
}

struct TailShape {
    double peak;   // interior maximum of the integrand
    double upper;  // truncation point with negligible remainder
    std::vector<double> breaks;
};

TailShape tail_shape(double alpha, double t, double s) {
    const double peak = std::max(0.0, -8.0 * pi * alpha * t - s);
    const double sigma = std::sqrt(2.0 * t);
    const double upper = peak + 22.0 * std::sqrt(t) + 4.0 * sigma;
    std::vector<double> breaks;
    if (peak > 0.0) breaks.push_back(0.5 * peak);
    for (double m : {-4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0}) {
        const double b = peak + m * sigma;
        if (b > 0.0 && b < upper) breaks.push_back(b);
    }
    return {peak, upper, std::move(breaks)};
}

}  // namespace

double free_kernel_radial(double t, double r) {
    require_time(t);
    if (r < 0.0) throw std::domain_error("free_kernel_radial: negative radius");
    return std::pow(4.0 * pi * t, -1.5) * std::exp(-r * r / (4.0 * t));
}

double free_kernel(double t, const SpacePoint& x, const SpacePoint& y) {
    return free_kernel_radial(t, distance(x, y));
}

double laplace_tail_integral(double alpha, double t, double s, const KernelEvalConfig& cfg) {
    require_time(t);
    require_alpha_finite_nonzero(alpha);
    if (s < 0.0) throw std::domain_error("laplace_tail_integral: negative offset");
    const double pref = tail_prefactor(t);
    const double z = (s + 8.0 * pi * alpha * t) / (2.0 * std::sqrt(t));
    if (z >= 0.0) return pref * std::exp(-s * s / (4.0 * t)) * erfcx_nonneg(z);
    const double e0 = combined_exponent(alpha, t, s);
    if (z >= cfg.erfcx_switchover) {
        // Direct product; erfc(z) for z < 0 lies in (1, 2), no cancellation.
        if (e0 + std::log(2.0 * pref) > log_double_max)
            throw magnitude_overflow("laplace_tail_integral overflows double range",
                                     laplace_tail_integral_log(alpha, t, s, cfg));
        return pref * std::exp(e0) * std::erfc(z);
    }
    // Reflection: erfcx(z) = 2 exp(z^2) - erfcx(-z), with exp(z^2) folded into e0.
    if (e0 + std::log(2.0 * pref) > log_double_max)
        throw magnitude_overflow("laplace_tail_integral overflows double range",
                                 laplace_tail_integral_log(alpha, t, s, cfg));
    const double reflected = pref * std::exp(-s * s / (4.0 * t)) * erfcx_nonneg(-z);
    return 2.0 * pref * std::exp(e0) - reflected;
}

double laplace_tail_integral_log(double alpha, double t, double s, const KernelEvalConfig&) {
    require_time(t);
    require_alpha_finite_nonzero(alpha);
    if (s < 0.0) throw std::domain_error("laplace_tail_integral: negative offset");
    const double z = (s + 8.0 * pi * alpha * t) / (2.0 * std::sqrt(t));
    if (z >= 0.0) return std::log(tail_prefactor(t)) - s * s / (4.0 * t) + std::log(erfcx_nonneg(z));
    // log(2 e^{z^2} - erfcx(-z)) with the prefactor exponent merged in; the
    // correction 2 - e^{-z^2} erfcx(-z) stays in [1, 2].
    const double e0 = combined_exponent(alpha, t, s);
    const double correction = 2.0 - std::exp(-z * z) * erfcx_nonneg(-z);
    return std::log(tail_prefactor(t)) + e0 + std::log(correction);
}

double laplace_tail_integral_quadrature(double alpha, double t, double s,
                                        const KernelEvalConfig& cfg) {
    require_time(t);
    require_alpha_finite_nonzero(alpha);
    if (s < 0.0) throw std::domain_error("laplace_tail_integral: negative offset");
    const auto shape = tail_shape(alpha, t, s);
    const double pref = std::pow(4.0 * pi * t, -1.5);
    // single combined exponent; the factors separately overflow/underflow
    auto integrand = [&](double u) {
        return pref * std::exp(-4.0 * pi * alpha * u - (u + s) * (u + s) / (4.0 * t));
    };
    return integrate(integrand, 0.0, shape.upper, shape.breaks, cfg).value;
}

double laplace_tail_integral_log_quadrature(double alpha, double t, double s,
                                            const KernelEvalConfig& cfg) {
    require_time(t);
    require_alpha_finite_nonzero(alpha);
    if (s < 0.0) throw std::domain_error("laplace_tail_integral: negative offset");
    const auto shape = tail_shape(alpha, t, s);
    auto log_integrand = [&](double u) {
        return -4.0 * pi * alpha * u + log_free_radial(t, u + s);
    };
    return integrate_log(log_integrand, 0.0, shape.upper, shape.breaks, cfg);
}

double kernel_bracket(double alpha, double t, double s, const KernelEvalConfig& cfg) {
    require_time(t);
    if (s < 0.0) throw std::domain_error("kernel_bracket: negative offset");
    const double p = free_kernel_radial(t, s);
    if (alpha == 0.0) return p;
    if (alpha > 0.0) {
        const double z = (s + 8.0 * pi * alpha * t) / (2.0 * std::sqrt(t));
        const double q = 4.0 * pi * alpha * std::sqrt(pi * t) * erfcx_nonneg(z);
        // q <= 1 analytically; guard the last ulp.
        return p * std::max(0.0, 1.0 - q);
    }
    return p - 4.0 * pi * alpha * laplace_tail_integral(alpha, t, s, cfg);
}

double kernel_bracket_log(double alpha, double t, double s, const KernelEvalConfig& cfg) {
    require_time(t);
    if (s < 0.0) throw std::domain_error("kernel_bracket: negative offset");
    if (alpha == 0.0) return log_free_radial(t, s);
    if (alpha > 0.0) {
        const double z = (s + 8.0 * pi * alpha * t) / (2.0 * std::sqrt(t));
        const double q = 4.0 * pi * alpha * std::sqrt(pi * t) * erfcx_nonneg(z);
        if (q >= 1.0) return -std::numeric_limits<double>::infinity();
        return log_free_radial(t, s) + std::log1p(-q);
    }
    return log_sum_exp(log_free_radial(t, s),
                       std::log(-4.0 * pi * alpha) + laplace_tail_integral_log(alpha, t, s, cfg));
}

double interaction_nonfree(double alpha, double t, double rx, double ry,
                           const KernelEvalConfig& cfg) {
    if (!(rx > 0.0) || !(ry > 0.0))
        throw std::domain_error("interaction kernel is singular at the puncture");
    return (2.0 * t / (rx * ry)) * kernel_bracket(alpha, t, rx + ry, cfg);
}

KernelTerms interaction_kernel_terms(double alpha, double t, double rx, double ry, double dist,
                                     const KernelEvalConfig& cfg) {
    require_time(t);
    if (!(rx > 0.0) || !(ry > 0.0))
        throw std::domain_error("interaction kernel is singular at the puncture");
    if (!std::isfinite(alpha)) throw std::domain_error("interaction_kernel: alpha must be finite");
    KernelTerms terms;
    terms.free_part = free_kernel_radial(t, dist);
    const double s = rx + ry;
    const double geom = 2.0 * t / (rx * ry);
    terms.image_part = geom * free_kernel_radial(t, s);
    if (alpha == 0.0) {
        terms.alpha_part = 0.0;
    } else if (alpha > 0.0) {
        const double z = (s + 8.0 * pi * alpha * t) / (2.0 * std::sqrt(t));
        const double q = 4.0 * pi * alpha * std::sqrt(pi * t) * erfcx_nonneg(z);
        terms.alpha_part = -geom * free_kernel_radial(t, s) * q;
    } else {
        terms.alpha_part = -geom * 4.0 * pi * alpha * laplace_tail_integral(alpha, t, s, cfg);
    }
    return terms;
}

double interaction_kernel_reduced(double alpha, double t, double rx, double ry, double dist,
                                  const KernelEvalConfig& cfg) {
    require_time(t);
    if (!(rx > 0.0) || !(ry > 0.0))
        throw std::domain_error("interaction kernel is singular at the puncture");
    if (!std::isfinite(alpha)) throw std::domain_error("interaction_kernel: alpha must be finite");
    return free_kernel_radial(t, dist) + interaction_nonfree(alpha, t, rx, ry, cfg);
}

double interaction_kernel(double alpha, double t, const SpacePoint& x, const SpacePoint& y,
                          const KernelEvalConfig& cfg) {
    return interaction_kernel_reduced(alpha, t, x.norm(), y.norm(), distance(x, y), cfg);
}

double interaction_kernel_log(double alpha, double t, const SpacePoint& x, const SpacePoint& y,
                              const KernelEvalConfig& cfg) {
    require_time(t);
    if (!std::isfinite(alpha)) throw std::domain_error("interaction_kernel: alpha must be finite");
    const double rx = x.norm(), ry = y.norm();
    const double log_free = log_free_radial(t, distance(x, y));
    const double log_nonfree =
        std::log(2.0 * t / (rx * ry)) + kernel_bracket_log(alpha, t, rx + ry, cfg);
    return log_sum_exp(log_free, log_nonfree);
}

double verify_scaling(double alpha, double t, double k, const SpacePoint& x, const SpacePoint& y,
                      const KernelEvalConfig& cfg) {
    if (!(k > 0.0)) throw std::domain_error("verify_scaling: k must be positive");
    const double lhs = interaction_kernel(alpha, t, x, y, cfg);
    const double sqrt_k = std::sqrt(k);
    const double rhs = std::pow(k, 1.5) * interaction_kernel(alpha / sqrt_k, k * t,
                                                             x.scaled(sqrt_k), y.scaled(sqrt_k), cfg);
    return lhs - rhs;
}

double regularizer_h(double alpha, double eps) {
    if (!(eps > 0.0)) throw std::domain_error("regularizer_h: eps must be positive");
    return (pi * pi / 4.0) * eps - 8.0 * pi * pi * alpha * eps * eps;
}

double scattering_length(double alpha) {
    if (!(alpha < 0.0))
        throw std::domain_error(
            "scattering_length: defined only for alpha < 0 (the point spectrum is empty for "
            "alpha >= 0)");
    return -1.0 / (4.0 * pi * alpha);
}

}  // namespace pik
