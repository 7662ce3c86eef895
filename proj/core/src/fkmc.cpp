#include "pik/fkmc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>

#include "pik/errors.hpp"
#include "pik/kernel.hpp"
#include "pik/parallel.hpp"
#include "pik/rng.hpp"
#include "pik/special_functions.hpp"

namespace pik {

void McConfig::validate(double horizon) const {
    if (n_paths < 1) throw std::domain_error("McConfig: need at least one path");
    if (!(dt > 0.0) || !(eps > 0.0)) throw std::domain_error("McConfig: dt and eps must be positive");
    if (dt > eps * eps / 10.0)
        throw std::domain_error("McConfig: dt must satisfy dt <= eps^2 / 10");
    if (!(horizon > 0.0)) throw std::domain_error("McConfig: horizon must be positive");
    const double steps = horizon / dt;
    if (std::abs(steps - std::round(steps)) > 1e-9 * std::max(1.0, steps))
        throw std::domain_error("McConfig: horizon must be an integral multiple of dt");
}

double step_occupancy(const std::array<double, 3>& a, const std::array<double, 3>& b, double eps) {
    const double eps2 = eps * eps;
    const double na = a[0] * a[0] + a[1] * a[1] + a[2] * a[2];
    const double nb = b[0] * b[0] + b[1] * b[1] + b[2] * b[2];
    const bool in_a = na < eps2, in_b = nb < eps2;
    if (in_a && in_b) return 1.0;
    if (!in_a && !in_b) return 0.0;  // pass-through chords are not resolved
    // |a + s (b - a)|^2 = eps^2 on s in (0, 1)
    const double dx = b[0] - a[0], dy = b[1] - a[1], dz = b[2] - a[2];
    const double qa = dx * dx + dy * dy + dz * dz;
    const double qb = a[0] * dx + a[1] * dy + a[2] * dz;
    const double qc = na - eps2;
    const double disc = qb * qb - qa * qc;
    if (disc <= 0.0 || qa == 0.0) return in_a ? 1.0 : 0.0;
    const double root = std::sqrt(disc);
    if (in_a) {
        const double s = (-qb + root) / qa;  // exit point
        return std::clamp(s, 0.0, 1.0);
    }
    const double s = (-qb - root) / qa;  // entry point
    return std::clamp(1.0 - s, 0.0, 1.0);
}

double occupation_time(std::span<const std::array<double, 3>> path, double dt, double eps) {
    if (!(eps > 0.0)) throw std::domain_error("occupation_time: eps must be positive");
    double tau = 0.0;
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
        tau += dt * step_occupancy(path[i], path[i + 1], eps);
    return tau;
}

McEstimate fk_estimate(double alpha, double horizon, const RadialTestFunction& f,
                       const McConfig& mc) {
    mc.validate(horizon);
    if (!std::isfinite(alpha)) throw std::domain_error("fk_estimate: alpha must be finite");
    const std::size_t steps = static_cast<std::size_t>(std::llround(horizon / mc.dt));
    const double sqrt_2dt = std::sqrt(2.0 * mc.dt);
    const double rate = mc.bypass_potential
                            ? 0.0
                            : regularizer_h(alpha, mc.eps) / (mc.eps * mc.eps * mc.eps);

    std::vector<double> values(mc.n_paths), weights(mc.n_paths);
    std::vector<unsigned char> occupied(mc.n_paths, 0);
    std::atomic<std::size_t> overflow_count{0};

    parallel_for_chunks(mc.n_paths, [&](std::size_t begin, std::size_t end) {
        for (std::size_t p = begin; p < end; ++p) {
            RngStream rng(mc.seed, p);
            std::array<double, 3> w = mc.start.coords;
            double tau = 0.0;
            for (std::size_t s = 0; s < steps; ++s) {
                const std::array<double, 3> prev = w;
                w[0] += sqrt_2dt * rng.next_normal();
                w[1] += sqrt_2dt * rng.next_normal();
                w[2] += sqrt_2dt * rng.next_normal();
                tau += mc.dt * step_occupancy(prev, w, mc.eps);
            }
            occupied[p] = tau > 0.0 ? 1 : 0;
            const double exponent = rate * tau;
            if (exponent > log_double_max) {
                overflow_count.fetch_add(1);
                weights[p] = 0.0;
                values[p] = 0.0;
                continue;
            }
            const double weight = std::exp(exponent);
            const double radius = std::sqrt(w[0] * w[0] + w[1] * w[1] + w[2] * w[2]);
            weights[p] = weight;
            values[p] = radius > 0.0 ? f(radius) * weight : 0.0;
        }
    });

    if (overflow_count.load() > 0)
        throw numeric_error("fk_estimate: path weight overflow on " +
                            std::to_string(overflow_count.load()) + " of " +
                            std::to_string(mc.n_paths) + " paths (alpha too negative for eps)");

    // fixed-order reduction: bit-identical results for a given config
    const double n = static_cast<double>(mc.n_paths);
    const double sum = std::accumulate(values.begin(), values.end(), 0.0);
    const double mean = sum / n;
    double ssq = 0.0;
    for (double v : values) ssq += (v - mean) * (v - mean);
    McEstimate est;
    est.mean = mean;
    est.std_error = mc.n_paths > 1 ? std::sqrt(ssq / (n * (n - 1.0))) : 0.0;
    double wsum = 0.0, wsq = 0.0;
    for (double w : weights) {
        wsum += w;
        wsq += w * w;
    }
    est.n_effective = wsq > 0.0 ? static_cast<std::size_t>(wsum * wsum / wsq) : 0;
    est.occupation_fraction =
        std::accumulate(occupied.begin(), occupied.end(), 0.0) / n;
    std::vector<double> sorted_weights = weights;
    std::sort(sorted_weights.begin(), sorted_weights.end(), std::greater<double>());
    const std::size_t top = std::max<std::size_t>(1, mc.n_paths / 10);
    const double top_sum = std::accumulate(sorted_weights.begin(), sorted_weights.begin() + top, 0.0);
    est.top_decile_weight_share = wsum > 0.0 ? top_sum / wsum : 0.0;
    return est;
}

}  // namespace pik
