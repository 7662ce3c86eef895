#pragma once

#include <functional>
#include <vector>

namespace pik {

/// Tolerances shared by every kernel and flow evaluation.
struct KernelEvalConfig {
    double quadrature_abs_tol = 1e-12;
    double quadrature_rel_tol = 1e-10;
    int max_subdivisions = 400;
    double erfcx_switchover = 0.0;  // below this argument the reflection formula is used

    void validate() const;
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int evaluations = 0;
    bool converged = false;
};

using Integrand = std::function<double(double)>;

/// Adaptive Gauss-Kronrod (G7,K15) on [a, b]. Throws quadrature_error when the
/// subdivision budget is exhausted before the tolerance is met.
QuadratureResult integrate(const Integrand& f, double a, double b, const KernelEvalConfig& cfg);

/// Same, but the interval is pre-split at the given points (sorted, clipped to
/// [a, b]). Use for integrands with kinks or localized features.
QuadratureResult integrate(const Integrand& f, double a, double b,
                           const std::vector<double>& breakpoints, const KernelEvalConfig& cfg);

/// Integral over [a, inf) via the map u = a + x/(1-x).
QuadratureResult integrate_to_infinity(const Integrand& f, double a, const KernelEvalConfig& cfg);

/// Computes log of the integral of exp(g) over [a, b] for a log-integrand g
/// that may be far outside double range. The integrand is renormalized by its
/// peak (coarse scan over the breakpoint-refined grid, then adaptive
/// integration of exp(g - max)). g may return -infinity where the true
/// integrand vanishes. Returns -infinity for an identically vanishing
/// integrand.
double integrate_log(const std::function<double(double)>& g, double a, double b,
                     const std::vector<double>& breakpoints, const KernelEvalConfig& cfg);

/// Nodes and weights of a composite Gauss-Legendre rule: each segment between
/// consecutive breakpoints is cut into panels no wider than max_panel_width
/// and a 12-point rule is placed on each panel.
struct PanelRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
PanelRule gauss_legendre_panels(const std::vector<double>& breakpoints, double max_panel_width);

/// Breakpoint ladder geometrically accumulating at `a` (resolves integrable
/// r^-xi endpoint singularities); first offset `scale`, `count` halvings.
std::vector<double> geometric_refinement(double a, double scale, int count);

}  // namespace pik
