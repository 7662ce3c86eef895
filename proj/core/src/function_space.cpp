#include "pik/function_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pik/errors.hpp"
#include "pik/kernel.hpp"
#include "pik/rng.hpp"
#include "pik/special_functions.hpp"

namespace pik {

namespace {

constexpr double pi = 3.14159265358979323846;

// e^{-(rx-r)^2/4t} - e^{-(rx+r)^2/4t}, stable for both tiny and large rx*r/t.
double gaussian_pair_difference(double t, double rx, double r) {
    const double cross = rx * r / (2.0 * t);
    if (cross < 350.0)
        return 2.0 * std::exp(-(rx * rx + r * r) / (4.0 * t)) * std::sinh(cross);
    const double d = rx - r;
    return std::exp(-d * d / (4.0 * t)) * (-std::expm1(-2.0 * cross));
}

double log_gaussian_pair_difference(double t, double rx, double r) {
    const double d = rx - r;
    return -d * d / (4.0 * t) + log1mexp(rx * r / t);
}

// Breakpoints for integrands of the form r f(r) * (kernel factor centered at rx).
std::vector<double> radial_breaks(double t, double rx, const RadialTestFunction& f) {
    std::vector<double> breaks = f.breakpoints;
    const double sigma = std::sqrt(2.0 * t);
    for (double m : {-4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0}) breaks.push_back(rx + m * sigma);
    const double origin_scale = std::min(sigma, rx);
    auto geo = geometric_refinement(0.0, origin_scale, 18);
    breaks.insert(breaks.end(), geo.begin(), geo.end());
    return breaks;
}

double upper_limit_free(double t, double rx, const RadialTestFunction& f) {
    return std::min(f.support_max, rx + 26.0 * std::sqrt(t));
}

// The bracket B(alpha,t,s) decays like exp(-4 pi |alpha| s) for alpha < 0,
// which can be slower than the Gaussian tail.
double upper_limit_interaction(double t, double rx, double alpha, const RadialTestFunction& f) {
    double reach = std::max(0.0, 26.0 * std::sqrt(t) - rx);
    if (alpha < 0.0) reach = std::max(reach, 64.0 / (4.0 * pi * -alpha));
    return std::min(f.support_max, std::max(reach, 4.0 * std::sqrt(t)));
}

void require_rx(double rx) {
    if (!(rx > 0.0)) throw std::domain_error("radial integral: rx must be strictly positive");
}

}  // namespace

double reference_weight(const SpacePoint& x) { return 1.0 / x.norm(); }

double reference_weight_radial(double r) {
    if (!(r > 0.0)) throw std::domain_error("reference weight: radius must be positive");
    return 1.0 / r;
}

PhiNorm phi_norm(const RadialTestFunction& f, double rho, const KernelEvalConfig& cfg) {
    if (!(rho > 1.0) || !(rho < 2.0)) throw std::domain_error("phi_norm: rho must lie in (1, 2)");
    cfg.validate();
    auto integrand = [&f, rho](double r) { return r * std::pow(f(r), rho); };
    PhiNorm norm;
    norm.rho = rho;
    // [0, 1]: the possible r^{1 - xi rho} singularity sits at the origin.
    std::vector<double> breaks = f.breakpoints;
    auto geo = geometric_refinement(0.0, 0.5, 24);
    breaks.insert(breaks.end(), geo.begin(), geo.end());
    double total = integrate(integrand, 0.0, std::min(1.0, f.support_max), breaks, cfg).value;
    if (f.support_max <= 1.0) {
        norm.value = std::pow(4.0 * pi * total, 1.0 / rho);
        return norm;
    }
    // Dyadic blocks outward; certify divergence when blocks stop decaying.
    double lo = 1.0;
    int stagnant = 0;
    double previous_block = -1.0;
    for (int octave = 0; octave < 64; ++octave) {
        const double hi = std::min(2.0 * lo, f.support_max);
        const double block = integrate(integrand, lo, hi, f.breakpoints, cfg).value;
        total += block;
        if (hi >= f.support_max) break;
        if (block <= std::max(cfg.quadrature_abs_tol, 1e-14 * total)) break;
        if (previous_block >= 0.0 && block >= 0.95 * previous_block) {
            if (++stagnant >= 4) {
                norm.finite = false;
                norm.value = std::numeric_limits<double>::infinity();
                return norm;
            }
        } else {
            stagnant = 0;
        }
        previous_block = block;
        lo = hi;
    }
    norm.value = std::pow(4.0 * pi * total, 1.0 / rho);
    return norm;
}

double pair(const AtomicMeasure& mu, const RadialTestFunction& f) {
    double sum = 0.0;
    for (const auto& atom : mu.atoms()) sum += atom.weight * f(atom.location.norm());
    return sum;
}

double radial_integral_against_free_kernel(double t, double rx, const RadialTestFunction& f,
                                           const KernelEvalConfig& cfg) {
    require_rx(rx);
    if (!(t > 0.0)) throw std::domain_error("radial integral: t must be positive");
    const double upper = upper_limit_free(t, rx, f);
    if (!(upper > 0.0)) return 0.0;
    auto integrand = [&](double r) { return r * f(r) * gaussian_pair_difference(t, rx, r); };
    const auto result = integrate(integrand, 0.0, upper, radial_breaks(t, rx, f), cfg);
    return result.value / (rx * std::sqrt(4.0 * pi * t));
}

double radial_integral_against_free_kernel_log(double t, double rx, const RadialTestFunction& f,
                                               const KernelEvalConfig& cfg) {
    require_rx(rx);
    const double upper = upper_limit_free(t, rx, f);
    if (!(upper > 0.0)) return -std::numeric_limits<double>::infinity();
    auto log_integrand = [&](double r) {
        const double fv = f(r);
        if (!(fv > 0.0) || !(r > 0.0)) return -std::numeric_limits<double>::infinity();
        return std::log(r * fv) + log_gaussian_pair_difference(t, rx, r);
    };
    const double lg = integrate_log(log_integrand, 0.0, upper, radial_breaks(t, rx, f), cfg);
    return lg - std::log(rx * std::sqrt(4.0 * pi * t));
}

double radial_integral_against_interaction_terms(double t, double rx, const RadialTestFunction& f,
                                                 double alpha, const KernelEvalConfig& cfg) {
    require_rx(rx);
    if (!std::isfinite(alpha)) throw std::domain_error("radial integral: alpha must be finite");
    const double upper = upper_limit_interaction(t, rx, alpha, f);
    if (!(upper > 0.0)) return 0.0;
    auto integrand = [&](double r) { return r * f(r) * kernel_bracket(alpha, t, r + rx, cfg); };
    const auto result = integrate(integrand, 0.0, upper, radial_breaks(t, rx, f), cfg);
    return result.value * (8.0 * pi * t / rx);
}

double radial_integral_against_image_term(double t, double rx, const RadialTestFunction& f,
                                          const KernelEvalConfig& cfg) {
    return radial_integral_against_interaction_terms(t, rx, f, 0.0, cfg);
}

double radial_integral_against_alpha_term(double t, double rx, const RadialTestFunction& f,
                                          double alpha, const KernelEvalConfig& cfg) {
    require_rx(rx);
    if (!std::isfinite(alpha)) throw std::domain_error("radial integral: alpha must be finite");
    if (alpha == 0.0) return 0.0;
    const double upper = upper_limit_interaction(t, rx, alpha, f);
    if (!(upper > 0.0)) return 0.0;
    auto integrand = [&](double r) {
        return r * f(r) * laplace_tail_integral(alpha, t, r + rx, cfg);
    };
    const auto result = integrate(integrand, 0.0, upper, radial_breaks(t, rx, f), cfg);
    return -result.value * (8.0 * pi * t / rx) * 4.0 * pi * alpha;
}

double radial_integral_against_interaction_terms_log(double t, double rx,
                                                     const RadialTestFunction& f, double alpha,
                                                     const KernelEvalConfig& cfg) {
    require_rx(rx);
    const double upper = upper_limit_interaction(t, rx, alpha, f);
    if (!(upper > 0.0)) return -std::numeric_limits<double>::infinity();
    auto log_integrand = [&](double r) {
        const double fv = f(r);
        if (!(fv > 0.0) || !(r > 0.0)) return -std::numeric_limits<double>::infinity();
        return std::log(r * fv) + kernel_bracket_log(alpha, t, r + rx, cfg);
    };
    const double lg = integrate_log(log_integrand, 0.0, upper, radial_breaks(t, rx, f), cfg);
    return lg + std::log(8.0 * pi * t / rx);
}

double spherical_product_integral_against_free_kernel(double t, double rx,
                                                      const RadialTestFunction& f,
                                                      const KernelEvalConfig& cfg) {
    require_rx(rx);
    const double upper = upper_limit_free(t, rx, f);
    if (!(upper > 0.0)) return 0.0;
    auto outer = [&](double r) {
        // inner integral over the cosine of the polar angle
        auto inner = [&](double c) {
            const double d2 = rx * rx + r * r - 2.0 * rx * r * c;
            return std::exp(-d2 / (4.0 * t));
        };
        const auto angular = integrate(inner, -1.0, 1.0, cfg);
        return 2.0 * pi * r * r * f(r) * angular.value;
    };
    const auto result = integrate(outer, 0.0, upper, radial_breaks(t, rx, f), cfg);
    return result.value * std::pow(4.0 * pi * t, -1.5);
}

McIntegral monte_carlo_integral_against_free_kernel(
    double t, const SpacePoint& x, const std::function<double(const SpacePoint&)>& phi,
    std::size_t n_samples, std::uint64_t seed) {
    if (!(t > 0.0)) throw std::domain_error("monte carlo integral: t must be positive");
    if (n_samples == 0) throw std::domain_error("monte carlo integral: need at least one sample");
    RngStream rng(seed, 0);
    const double sigma = std::sqrt(2.0 * t);
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t i = 0; i < n_samples; ++i) {
        double y[3];
        for (int c = 0; c < 3; ++c) y[c] = x.coords[c] + sigma * rng.next_normal();
        if (y[0] == 0.0 && y[1] == 0.0 && y[2] == 0.0) continue;  // measure-zero puncture
        const double v = phi(SpacePoint(y[0], y[1], y[2]));
        sum += v;
        sum_sq += v * v;
    }
    const double n = static_cast<double>(n_samples);
    const double mean = sum / n;
    const double variance = std::max(0.0, sum_sq / n - mean * mean);
    return {mean, std::sqrt(variance / n)};
}

}  // namespace pik
