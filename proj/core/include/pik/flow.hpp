#pragma once

#include "pik/function_space.hpp"
#include "pik/measure.hpp"
#include "pik/quadrature.hpp"
#include "pik/radial_grid.hpp"
#include "pik/radial_profile.hpp"
#include "pik/space.hpp"

namespace pik {

/// Value of S_t^alpha f at one point, with the kernel-term breakdown.
struct FlowResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    double free_part = 0.0;
    double image_part = 0.0;
    double alpha_part = 0.0;  // signed
};

/// S_t^alpha f(x) = int f(|y|) p_t^alpha(x, y) dy by radial reduction.
FlowResult apply_semigroup(double alpha, double t, const SpacePoint& x,
                           const RadialTestFunction& f, const KernelEvalConfig& cfg = {});
FlowResult apply_semigroup_radial(double alpha, double t, double rx, const RadialTestFunction& f,
                                  const KernelEvalConfig& cfg = {});

/// log S_t^alpha f(x); stays finite in the strongly negative alpha regime
/// where the flow value explodes beyond double range.
double apply_semigroup_log(double alpha, double t, double rx, const RadialTestFunction& f,
                           const KernelEvalConfig& cfg = {});

/// E_mu <X_t^alpha, f> = <mu, S_t^alpha f> = sum_i w_i S_t^alpha f(x_i).
double expected_measure_pairing(const AtomicMeasure& mu, double alpha, double t,
                                const RadialTestFunction& f, const KernelEvalConfig& cfg = {});

/// S_t^alpha f sampled on a radial grid (independent quadratures, parallel
/// across nodes) for reuse as an intermediate function.
RadialFunctionGrid materialize_semigroup(double alpha, double t, const std::vector<double>& radii,
                                         const RadialTestFunction& f,
                                         const KernelEvalConfig& cfg = {});

}  // namespace pik
