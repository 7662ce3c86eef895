#include "pik/loglaplace.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "pik/errors.hpp"
#include "pik/flow.hpp"
#include "pik/function_space.hpp"
#include "pik/kernel.hpp"
#include "pik/parallel.hpp"

namespace pik {

namespace {
constexpr double pi = 3.14159265358979323846;

// e^{-(rx-r)^2/4t} - e^{-(rx+r)^2/4t} (same stable form as the flow module).
double gaussian_pair_difference(double t, double rx, double r) {
    const double cross = rx * r / (2.0 * t);
    if (cross < 350.0)
        return 2.0 * std::exp(-(rx * rx + r * r) / (4.0 * t)) * std::sinh(cross);
    const double d = rx - r;
    return std::exp(-d * d / (4.0 * t)) * (-std::expm1(-2.0 * cross));
}
}  // namespace

void BranchingParams::validate() const {
    if (!(eta >= 0.0)) throw std::domain_error("BranchingParams: eta must be nonnegative");
    if (!(beta > 0.0) || !(beta < 1.0))
        throw std::domain_error("BranchingParams: beta must lie in the open interval (0, 1)");
}

void LogLaplaceGridSpec::validate() const {
    if (!(t_max > 0.0)) throw std::domain_error("grid: t_max must be positive");
    if (time_steps < 2) throw std::domain_error("grid: need at least two time steps");
    if (!(r_min > 0.0) || !(r_max > r_min)) throw std::domain_error("grid: bad radial range");
    if (radial_nodes < 8) throw std::domain_error("grid: need at least eight radial nodes");
}

RadialFunctionGrid RadialField::slice(std::size_t time_index) const {
    return RadialFunctionGrid(radii, values.at(time_index));
}

double RadialField::value_at(std::size_t time_index, double r) const {
    if (r < radii.front() || r > radii.back())
        throw numeric_error("RadialField: radius outside the grid hull, extrapolation refused");
    return slice(time_index)(r);
}

std::size_t RadialField::time_index_of(double t) const {
    for (std::size_t i = 0; i < times.size(); ++i)
        if (std::abs(times[i] - t) <= 1e-12 * std::max(1.0, std::abs(t))) return i;
    throw std::domain_error("RadialField: time is not a grid point");
}

void RadialField::write_csv(std::ostream& out) const {
    out << "t";
    for (double r : radii) out << ",r=" << r;
    out << "\n";
    for (std::size_t i = 0; i < times.size(); ++i) {
        out << times[i];
        for (double v : values[i]) out << "," << v;
        out << "\n";
    }
}

SemigroupOperator::SemigroupOperator(double alpha, const LogLaplaceGridSpec& grid,
                                     const KernelEvalConfig& cfg)
    : alpha_(alpha),
      dt_(grid.t_max / grid.time_steps),
      radii_(log_spaced_radii(grid.r_min, grid.r_max, grid.radial_nodes)),
      cfg_(cfg) {
    grid.validate();
    const int lags = grid.time_steps;
    const std::size_t n = radii_.size();
    matrices_.assign(lags + 1, {});
    RadialFunctionGrid shape(radii_, std::vector<double>(n, 1.0));  // stencil source
    // One matrix per time lag; rows are independent, and so are lags.
    parallel_for_chunks(lags, [&](std::size_t begin, std::size_t end) {
        for (std::size_t m = begin + 1; m <= end; ++m) {
            const double delta = dt_ * static_cast<double>(m);
            const double sigma = std::sqrt(2.0 * delta);
            // composite GL panels: resolve the kernel width everywhere
            std::vector<double> breaks{0.0};
            auto geo = geometric_refinement(0.0, std::min(sigma, radii_.front()), 12);
            breaks.insert(breaks.end(), geo.begin(), geo.end());
            breaks.push_back(radii_.back());
            const auto rule = gauss_legendre_panels(breaks, 0.5 * sigma);
            const std::size_t q = rule.nodes.size();
            // interpolation stencils of all quadrature nodes
            std::vector<RadialFunctionGrid::Stencil> stencils(q);
            for (std::size_t j = 0; j < q; ++j) stencils[j] = shape.stencil(rule.nodes[j]);
            auto& mat = matrices_[m];
            mat.assign(n * n, 0.0);
            for (std::size_t row = 0; row < n; ++row) {
                const double rx = radii_[row];
                for (std::size_t j = 0; j < q; ++j) {
                    const double r = rule.nodes[j];
                    if (!(r > 0.0)) continue;
                    // radial kernel of S_delta: free reduction + non-free bracket
                    const double free_part =
                        gaussian_pair_difference(delta, rx, r) / (rx * std::sqrt(4.0 * pi * delta));
                    const double nonfree =
                        (8.0 * pi * delta / rx) * kernel_bracket(alpha_, delta, r + rx, cfg_);
                    const double w = rule.weights[j] * r * (free_part + nonfree);
                    if (w == 0.0) continue;
                    const auto& st = stencils[j];
                    for (int k = 0; k < st.size; ++k)
                        mat[row * n + st.index[k]] += w * st.weight[k];
                }
            }
        }
    });
}

std::vector<double> SemigroupOperator::apply(int lag, const std::vector<double>& values) const {
    const std::size_t n = radii_.size();
    if (values.size() != n) throw std::domain_error("SemigroupOperator: size mismatch");
    if (lag == 0) return values;
    if (lag < 0 || lag >= static_cast<int>(matrices_.size()))
        throw std::domain_error("SemigroupOperator: lag out of range");
    const auto& mat = matrices_[lag];
    std::vector<double> out(n, 0.0);
    for (std::size_t row = 0; row < n; ++row) {
        double acc = 0.0;
        const double* m = mat.data() + row * n;
        for (std::size_t col = 0; col < n; ++col) acc += m[col] * values[col];
        out[row] = acc;
    }
    return out;
}

std::vector<double> SemigroupOperator::apply_profile(int lag, const RadialTestFunction& f) const {
    const std::size_t n = radii_.size();
    std::vector<double> out(n);
    if (lag == 0) {
        for (std::size_t i = 0; i < n; ++i) out[i] = f(radii_[i]);
        return out;
    }
    const double t = dt_ * lag;
    parallel_for_chunks(n, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i)
            out[i] = apply_semigroup_radial(alpha_, t, radii_[i], f, cfg_).value;
    });
    return out;
}

double weighted_sup_distance(const std::vector<double>& radii, const std::vector<double>& a,
                             const std::vector<double>& b) {
    double sup = 0.0;
    for (std::size_t i = 0; i < radii.size(); ++i)
        sup = std::max(sup, radii[i] * std::abs(a[i] - b[i]));
    return sup;
}

std::pair<RadialField, PicardReport> solve_log_laplace(double alpha, const BranchingParams& bp,
                                                       const RadialTestFunction& f,
                                                       const LogLaplaceGridSpec& grid,
                                                       const PicardOptions& opts,
                                                       const KernelEvalConfig& cfg) {
    bp.validate();
    grid.validate();
    if (!f.in_phi_cone())
        throw std::domain_error("solve_log_laplace: initial datum must lie in the cone (xi < 1)");
    SemigroupOperator op(alpha, grid, cfg);
    const int steps = grid.time_steps;
    const std::size_t n = op.radii().size();
    const double dt = op.dt();
    const double power = 1.0 + bp.beta;

    RadialField field;
    field.radii = op.radii();
    field.times.resize(steps + 1);
    for (int i = 0; i <= steps; ++i) field.times[i] = dt * i;

    // linear term S_{t_i} f and the s = 0 history slice S_{t_i} f^{1+beta},
    // both from the analytic profile
    std::vector<std::vector<double>> linear(steps + 1), history0(steps + 1);
    const auto f_pow = powered_profile(f, power);
    for (int i = 0; i <= steps; ++i) {
        linear[i] = op.apply_profile(i, f);
        history0[i] = bp.eta > 0.0 ? op.apply_profile(i, f_pow) : std::vector<double>(n, 0.0);
    }

    PicardReport report;
    auto v = linear;  // first Picard iterate
    if (bp.eta == 0.0) {
        field.values = std::move(v);
        report.converged = true;
        return {std::move(field), report};
    }

    std::vector<std::vector<double>> powered(steps + 1, std::vector<double>(n));
    auto update_powered = [&]() {
        for (int i = 0; i <= steps; ++i)
            for (std::size_t j = 0; j < n; ++j) powered[i][j] = std::pow(v[i][j], power);
    };

    for (int iter = 1; iter <= opts.max_iterations; ++iter) {
        update_powered();
        double residual = 0.0;
        std::vector<std::vector<double>> next(steps + 1);
        next[0] = linear[0];
        std::vector<long> clamp_per_slice(steps + 1, 0);
        parallel_for_chunks(steps, [&](std::size_t begin, std::size_t end) {
            for (std::size_t ii = begin + 1; ii <= end; ++ii) {
                const int i = static_cast<int>(ii);
                // trapezoid over s_0..s_i; S_0 at the end cell is the identity
                std::vector<double> acc(n, 0.0);
                auto add = [&acc, n](const std::vector<double>& term, double w) {
                    for (std::size_t j = 0; j < n; ++j) acc[j] += w * term[j];
                };
                add(history0[i], 0.5);
                for (int l = 1; l < i; ++l) add(op.apply(i - l, powered[l]), 1.0);
                add(powered[i], 0.5);
                auto& row = next[ii];
                row.resize(n);
                for (std::size_t j = 0; j < n; ++j) {
                    // positive operator: clamp quadrature noise in the memory term
                    const double memory = std::max(0.0, acc[j]) * dt;
                    const double raw = linear[i][j] - bp.eta * memory;
                    if (raw < 0.0) ++clamp_per_slice[ii];
                    row[j] = std::max(0.0, raw);
                }
            }
        });
        long clamps = 0;
        for (int i = 1; i <= steps; ++i) {
            clamps += clamp_per_slice[i];
            residual = std::max(residual, weighted_sup_distance(field.radii, next[i], v[i]));
        }
        v = std::move(next);
        report.iterations = iter;
        report.residual_history.push_back(residual);
        report.final_sup_residual = residual;
        report.clamp_count = clamps;
        if (residual <= opts.tolerance) {
            report.converged = true;
            break;
        }
    }
    field.values = std::move(v);
    return {std::move(field), report};
}

double laplace_functional(const AtomicMeasure& mu, const RadialField& v, double t) {
    const std::size_t idx = v.time_index_of(t);
    double exponent = 0.0;
    for (const auto& atom : mu.atoms())
        exponent += atom.weight * v.value_at(idx, atom.location.norm());
    return std::exp(-exponent);
}

ScalingPropertyReport verify_scaling_property(double alpha, double lambda_k, double k,
                                              const BranchingParams& bp,
                                              const RadialTestFunction& f,
                                              const LogLaplaceGridSpec& grid,
                                              const PicardOptions& opts,
                                              const KernelEvalConfig& cfg) {
    if (!(k > 0.0)) throw std::domain_error("verify_scaling_property: k must be positive");
    bp.validate();
    const double sqrt_k = std::sqrt(k);
    const double inv_beta = 1.0 / bp.beta;

    // Left problem: kernel parameter lambda_k alpha, datum k^{-1/beta} f(k^{-1/2} .),
    // on the scaled image of the reference grid.
    LogLaplaceGridSpec scaled_grid = grid;
    scaled_grid.t_max = grid.t_max * k;
    scaled_grid.r_min = grid.r_min * sqrt_k;
    scaled_grid.r_max = grid.r_max * sqrt_k;
    const auto scaled_datum = scaled_profile(f, 1.0 / sqrt_k, std::pow(k, -inv_beta));
    auto [v_field, v_report] = solve_log_laplace(lambda_k * alpha, bp, scaled_datum, scaled_grid,
                                                 opts, cfg);

    // Right problem at reference resolution.
    const double alpha_right = sqrt_k * lambda_k * alpha;
    auto [w_field, w_report] = solve_log_laplace(alpha_right, bp, f, grid, opts, cfg);

    // w_k(t, x) := k^{1/beta} v(kt, sqrt(k) x) sampled on the reference nodes
    // (which are exactly the scaled nodes of the left grid).
    ScalingPropertyReport report;
    report.scaled_equation_alpha = alpha_right;
    report.base_report = w_report;
    report.scaled_report = v_report;
    const double amplitude = std::pow(k, inv_beta);
    double disc = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < w_field.times.size(); ++i) {
        for (std::size_t j = 0; j < w_field.radii.size(); ++j) {
            const double w_val = w_field.values[i][j];
            const double v_val = amplitude * v_field.values[i][j];
            const double weight = w_field.radii[j];
            disc = std::max(disc, weight * std::abs(v_val - w_val));
            scale = std::max(scale, weight * std::abs(w_val));
        }
    }
    report.discrepancy = disc;
    report.scale = scale;
    report.relative_discrepancy = scale > 0.0 ? disc / scale : 0.0;
    return report;
}

}  // namespace pik
