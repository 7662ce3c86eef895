#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "pik/measure.hpp"
#include "pik/quadrature.hpp"
#include "pik/radial_grid.hpp"
#include "pik/radial_profile.hpp"

namespace pik {

/// Branching mechanism eta v^(1+beta); the finite-variance case beta = 1 is
/// outside the model.
struct BranchingParams {
    double eta = 1.0;
    double beta = 0.5;
    void validate() const;
};

/// Discretization of the time-radius rectangle: uniform times, log radii.
struct LogLaplaceGridSpec {
    double t_max = 1.0;
    int time_steps = 64;
    double r_min = 1e-3;
    double r_max = 100.0;
    int radial_nodes = 96;
    void validate() const;
};

/// Solution field v(t, r) on the grid. Row 0 is the initial datum.
struct RadialField {
    std::vector<double> times;
    std::vector<double> radii;
    std::vector<std::vector<double>> values;  // times.size() x radii.size()

    RadialFunctionGrid slice(std::size_t time_index) const;
    double value_at(std::size_t time_index, double r) const;
    std::size_t time_index_of(double t) const;  // exact grid times only
    void write_csv(std::ostream& out) const;
};

struct PicardOptions {
    double tolerance = 1e-8;  // weighted sup-norm of successive differences
    int max_iterations = 60;
};

struct PicardReport {
    int iterations = 0;
    double final_sup_residual = 0.0;
    bool converged = false;
    std::vector<double> residual_history;
    long clamp_count = 0;  // negative grid values clamped to 0 (grid coarseness signal)
};

/// Discretized action of S_delta^alpha on grid functions, precomputed for
/// every lag of the uniform time grid. Row j of matrix(m) holds composite
/// Gauss-Legendre weights against the radial kernel, collapsed through the
/// grid interpolation, so one application is a dense N x N product.
class SemigroupOperator {
public:
    SemigroupOperator(double alpha, const LogLaplaceGridSpec& grid, const KernelEvalConfig& cfg);

    /// (S_{lag * dt} u) on the grid from nodal values u.
    std::vector<double> apply(int lag, const std::vector<double>& values) const;

    /// S_{lag * dt} f for an analytic profile (adaptive quadrature, exact f).
    std::vector<double> apply_profile(int lag, const RadialTestFunction& f) const;

    const std::vector<double>& radii() const noexcept { return radii_; }
    double dt() const noexcept { return dt_; }
    double alpha() const noexcept { return alpha_; }

private:
    double alpha_;
    double dt_;
    std::vector<double> radii_;
    KernelEvalConfig cfg_;
    std::vector<std::vector<double>> matrices_;  // per lag, row-major N x N
};

/// Picard solution of
///   v(t, x) = S_t^alpha f(x) - eta int_0^t ds S_{t-s}^alpha [v^{1+beta}(s, .)](x)
/// on the grid (trapezoid in s; the s = t end cell is the identity action).
/// The returned field satisfies 0 <= v <= S^alpha f node-wise.
std::pair<RadialField, PicardReport> solve_log_laplace(double alpha, const BranchingParams& bp,
                                                       const RadialTestFunction& f,
                                                       const LogLaplaceGridSpec& grid,
                                                       const PicardOptions& opts = {},
                                                       const KernelEvalConfig& cfg = {});

/// E_mu exp<X_t^alpha, -f> = exp(-<mu, v(t, .)>) for the solved field of f.
double laplace_functional(const AtomicMeasure& mu, const RadialField& v, double t);

/// sup_j r_j |a_j - b_j| (difference measured against the reference weight).
double weighted_sup_distance(const std::vector<double>& radii, const std::vector<double>& a,
                             const std::vector<double>& b);

struct ScalingPropertyReport {
    double discrepancy = 0.0;           // weighted sup of |w_k - w|
    double scale = 0.0;                 // weighted sup of |w|
    double relative_discrepancy = 0.0;  // ratio of the two
    double scaled_equation_alpha = 0.0; // k^{1/2} lambda_k alpha (right-hand problem)
    PicardReport base_report;
    PicardReport scaled_report;
};

/// Checks the scaling identity k^{1/beta} v(kt, sqrt(k) x) = w(t, x) between
/// the solution v for kernel parameter lambda_k alpha with datum
/// k^{-1/beta} f(k^{-1/2} .) and the solution w for parameter
/// k^{1/2} lambda_k alpha with datum f, both discretized at the reference
/// resolution (the left problem runs on the scaled image of the grid).
ScalingPropertyReport verify_scaling_property(double alpha, double lambda_k, double k,
                                              const BranchingParams& bp,
                                              const RadialTestFunction& f,
                                              const LogLaplaceGridSpec& grid,
                                              const PicardOptions& opts = {},
                                              const KernelEvalConfig& cfg = {});

}  // namespace pik
