#include "pik/flow.hpp"

#include <cmath>

#include "pik/parallel.hpp"
#include "pik/special_functions.hpp"

namespace pik {

FlowResult apply_semigroup_radial(double alpha, double t, double rx, const RadialTestFunction& f,
                                  const KernelEvalConfig& cfg) {
    if (!(t > 0.0)) throw std::domain_error("apply_semigroup: t must be positive");
    if (!(rx > 0.0)) throw std::domain_error("apply_semigroup: x must avoid the puncture");
    FlowResult result;
    result.free_part = radial_integral_against_free_kernel(t, rx, f, cfg);
    result.image_part = radial_integral_against_image_term(t, rx, f, cfg);
    if (alpha == 0.0) {
        result.alpha_part = 0.0;
        result.value = result.free_part + result.image_part;
    } else {
        result.alpha_part = radial_integral_against_alpha_term(t, rx, f, alpha, cfg);
        // combined bracket form: stable against image/alpha cancellation at large alpha
        result.value =
            result.free_part + radial_integral_against_interaction_terms(t, rx, f, alpha, cfg);
    }
    result.abs_error_estimate =
        cfg.quadrature_rel_tol * (std::abs(result.free_part) + std::abs(result.image_part) +
                                  std::abs(result.alpha_part)) +
        3.0 * cfg.quadrature_abs_tol;
    return result;
}

FlowResult apply_semigroup(double alpha, double t, const SpacePoint& x, const RadialTestFunction& f,
                           const KernelEvalConfig& cfg) {
    return apply_semigroup_radial(alpha, t, x.norm(), f, cfg);
}

double apply_semigroup_log(double alpha, double t, double rx, const RadialTestFunction& f,
                           const KernelEvalConfig& cfg) {
    if (!(t > 0.0)) throw std::domain_error("apply_semigroup: t must be positive");
    if (!(rx > 0.0)) throw std::domain_error("apply_semigroup: x must avoid the puncture");
    const double log_free = radial_integral_against_free_kernel_log(t, rx, f, cfg);
    const double log_nonfree = radial_integral_against_interaction_terms_log(t, rx, f, alpha, cfg);
    return log_sum_exp(log_free, log_nonfree);
}

double expected_measure_pairing(const AtomicMeasure& mu, double alpha, double t,
                                const RadialTestFunction& f, const KernelEvalConfig& cfg) {
    double sum = 0.0;
    for (const auto& atom : mu.atoms())
        sum += atom.weight * apply_semigroup_radial(alpha, t, atom.location.norm(), f, cfg).value;
    return sum;
}

RadialFunctionGrid materialize_semigroup(double alpha, double t, const std::vector<double>& radii,
                                         const RadialTestFunction& f, const KernelEvalConfig& cfg) {
    std::vector<double> values(radii.size());
    parallel_for_chunks(radii.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i)
            values[i] = apply_semigroup_radial(alpha, t, radii[i], f, cfg).value;
    });
    return RadialFunctionGrid(radii, std::move(values));
}

}  // namespace pik
