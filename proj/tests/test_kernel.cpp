#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>
#include <vector>

#include "pik/errors.hpp"
#include "pik/function_space.hpp"
#include "pik/kernel.hpp"
#include "pik/radial_profile.hpp"
#include "test_support.hpp"

using namespace pik;

namespace {
constexpr double pi = 3.14159265358979323846;
const KernelEvalConfig cfg{};

// sample parameters with the combined tail exponent kept in double range,
// invariant under the scaling map itself
bool representable(double alpha, double t, double s) {
    return 4.0 * pi * alpha * s + 16.0 * pi * pi * alpha * alpha * t < 600.0;
}
}  // namespace

TEST_CASE("free kernel: coincident points and closed form") {
    const SpacePoint x(0.3, -0.7, 0.2);
    CHECK(free_kernel(1.0, x, x) == doctest::Approx(std::pow(4.0 * pi, -1.5)).epsilon(1e-15));
    // independent evaluation at t = 0.5, |y - x| = 1
    const SpacePoint a(1.0, 0.0, 0.0), b(1.0, 1.0, 0.0);
    CHECK(free_kernel(0.5, a, b) ==
          doctest::Approx(testsupport::free_kernel_reference(0.5, 1.0)).epsilon(1e-14));
    CHECK(free_kernel(0.5, a, b) == free_kernel(0.5, b, a));
    CHECK_THROWS_AS(free_kernel(0.0, a, b), std::domain_error);
    CHECK_THROWS_AS(free_kernel(-1.0, a, b), std::domain_error);
}

TEST_CASE("free kernel scaling identity") {
    testsupport::Rng rng(11);
    for (int i = 0; i < 50; ++i) {
        const double t = rng.log_uniform(0.05, 5.0);
        const double k = rng.log_uniform(0.1, 50.0);
        const SpacePoint x(rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(0.1, 3));
        const SpacePoint y(rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(0.1, 3));
        const double lhs = free_kernel(t, x, y);
        const double rhs =
            std::pow(k, 1.5) * free_kernel(k * t, x.scaled(std::sqrt(k)), y.scaled(std::sqrt(k)));
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("radial free kernel") {
    CHECK(free_kernel_radial(0.7, 0.0) == doctest::Approx(std::pow(4.0 * pi * 0.7, -1.5)));
    CHECK(free_kernel_radial(1.0, 2.0) ==
          doctest::Approx(std::pow(4.0 * pi, -1.5) * std::exp(-1.0)).epsilon(1e-15));
    double prev = free_kernel_radial(0.9, 0.0);
    for (double r : {0.2, 0.5, 1.0, 2.0, 5.0}) {
        const double v = free_kernel_radial(0.9, r);
        CHECK(v <= prev);
        prev = v;
    }
    CHECK_THROWS_AS(free_kernel_radial(1.0, -0.1), std::domain_error);
    CHECK_THROWS_AS(free_kernel_radial(0.0, 1.0), std::domain_error);
}

TEST_CASE("laplace tail integral: closed form vs quadrature oracle") {
    CHECK(laplace_tail_integral(1.0, 1.0, 1.0, cfg) ==
          doctest::Approx(laplace_tail_integral_quadrature(1.0, 1.0, 1.0, cfg)).epsilon(1e-10));
    testsupport::Rng rng(23);
    for (int i = 0; i < 40; ++i) {
        const double alpha = rng.uniform(-3.0, 3.0);
        const double t = rng.log_uniform(0.1, 3.0);
        const double s = rng.log_uniform(0.05, 6.0);
        if (alpha == 0.0 || !representable(alpha, t, s)) continue;
        const double closed = laplace_tail_integral(alpha, t, s, cfg);
        const double quad = laplace_tail_integral_quadrature(alpha, t, s, cfg);
        CHECK(closed == doctest::Approx(quad).epsilon(1e-9));
    }
}

TEST_CASE("laplace tail integral: Watson limit 4 pi alpha I -> p_t(s)") {
    const double t = 0.8, s = 1.3;
    const double target = free_kernel_radial(t, s);
    std::vector<double> constants;
    for (double alpha : {1e2, 1e3, 1e4}) {
        const double value = 4.0 * pi * alpha * laplace_tail_integral(alpha, t, s, cfg);
        constants.push_back(alpha * std::abs(value - target));
    }
    const double c_max = *std::max_element(constants.begin(), constants.end());
    const double c_min = *std::min_element(constants.begin(), constants.end());
    CHECK(c_max / c_min < 1.1);  // fitted constant stable across two decades
    // and the fitted constant actually bounds the deviation
    for (double alpha : {1e2, 1e3, 1e4}) {
        const double value = 4.0 * pi * alpha * laplace_tail_integral(alpha, t, s, cfg);
        CHECK(std::abs(value - target) <= 1.05 * c_max / alpha);
    }
}

TEST_CASE("laplace tail integral: upper bound for positive alpha") {
    testsupport::Rng rng(5);
    for (int i = 0; i < 30; ++i) {
        const double alpha = rng.log_uniform(0.01, 50.0);
        const double t = rng.log_uniform(0.05, 5.0);
        const double s = rng.uniform(0.0, 5.0);
        const double bound = free_kernel_radial(t, s) / (4.0 * pi * alpha);
        CHECK(laplace_tail_integral(alpha, t, s, cfg) <= bound * (1.0 + 1e-12));
    }
}

TEST_CASE("laplace tail integral: domain and overflow errors") {
    CHECK_THROWS_AS(laplace_tail_integral(0.0, 1.0, 1.0, cfg), std::domain_error);
    CHECK_THROWS_AS(laplace_tail_integral(1.0, -1.0, 1.0, cfg), std::domain_error);
    CHECK_THROWS_AS(laplace_tail_integral(1.0, 1.0, -0.5, cfg), std::domain_error);
    CHECK_THROWS_AS(laplace_tail_integral(-50.0, 10.0, 0.0, cfg), magnitude_overflow);
    try {
        laplace_tail_integral(-50.0, 10.0, 0.0, cfg);
    } catch (const magnitude_overflow& e) {
        CHECK(e.log_magnitude() > 700.0);  // exponent travels with the error
    }
}

TEST_CASE("laplace tail integral: log path matches log quadrature far outside double range") {
    for (double alpha : {-10.0, -5.0}) {
        for (double t : {0.5, 10.0}) {
            const double lg = laplace_tail_integral_log(alpha, t, 1.0, cfg);
            const double lq = laplace_tail_integral_log_quadrature(alpha, t, 1.0, cfg);
            CHECK(lg == doctest::Approx(lq).epsilon(1e-10));
        }
    }
    // and the log path agrees with the linear path where both exist
    const double lin = laplace_tail_integral(-1.0, 0.5, 0.7, cfg);
    CHECK(std::log(lin) == doctest::Approx(laplace_tail_integral_log(-1.0, 0.5, 0.7, cfg)));
}

TEST_CASE("interaction kernel: alpha = 0 closed value") {
    const SpacePoint x(1.0, 0.0, 0.0);
    const double expected = std::pow(4.0 * pi, -1.5) * (1.0 + 2.0 * std::exp(-1.0));
    CHECK(interaction_kernel(0.0, 1.0, x, x, cfg) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("interaction kernel dominates the free kernel for alpha <= 0") {
    testsupport::Rng rng(7);
    for (int i = 0; i < 30; ++i) {
        const double alpha = rng.uniform(-1.0, 0.0);
        const double t = rng.log_uniform(0.05, 1.5);
        const SpacePoint x(rng.uniform(0.2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2));
        const SpacePoint y(rng.uniform(0.2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2));
        CHECK(interaction_kernel(alpha, t, x, y, cfg) >= free_kernel(t, x, y));
    }
}

TEST_CASE("interaction kernel decreases to the free kernel as alpha grows") {
    const SpacePoint x(0.8, 0.1, 0.0), y(-0.4, 1.1, 0.3);
    const double t = 0.6;
    const double free_value = free_kernel(t, x, y);
    double prev_gap = std::numeric_limits<double>::infinity();
    for (double alpha : {1e2, 1e3, 1e4}) {
        const double gap = interaction_kernel(alpha, t, x, y, cfg) - free_value;
        CHECK(gap >= 0.0);
        CHECK(gap < prev_gap);
        prev_gap = gap;
    }
    // O(1/alpha) rate: alpha * gap roughly constant
    const double g2 = 1e2 * (interaction_kernel(1e2, t, x, y, cfg) - free_value);
    const double g4 = 1e4 * (interaction_kernel(1e4, t, x, y, cfg) - free_value);
    CHECK(g2 / g4 == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("interaction kernel: exact swap symmetry and pointwise alpha monotonicity") {
    testsupport::Rng rng(15);
    for (int i = 0; i < 20; ++i) {
        const double t = rng.log_uniform(0.1, 2.0);
        const double alpha = rng.uniform(-1.0, 3.0);
        const SpacePoint x(rng.uniform(0.2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2));
        const SpacePoint y(rng.uniform(0.2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2));
        if (!representable(std::min(alpha, 0.0), t, x.norm() + y.norm())) continue;
        CHECK(interaction_kernel(alpha, t, x, y, cfg) == interaction_kernel(alpha, t, y, x, cfg));
        double prev = std::numeric_limits<double>::infinity();
        for (double a : {alpha - 0.5, alpha, alpha + 0.5, alpha + 2.0}) {
            const double v = interaction_kernel(a, t, x, y, cfg);
            CHECK(v <= prev * (1.0 + 1e-14));
            CHECK(v > 0.0);
            prev = v;
        }
    }
}

TEST_CASE("interaction kernel term breakdown reassembles the total") {
    testsupport::Rng rng(31);
    for (int i = 0; i < 20; ++i) {
        const double alpha = rng.uniform(-1.5, 4.0);
        const double t = rng.log_uniform(0.1, 1.5);
        const double rx = rng.log_uniform(0.2, 3.0), ry = rng.log_uniform(0.2, 3.0);
        const double dist = std::abs(rx - ry) + rng.uniform(0.0, 0.4);
        if (!representable(std::min(alpha, 0.0), t, rx + ry)) continue;
        const auto terms = interaction_kernel_terms(alpha, t, rx, ry, dist, cfg);
        const double total = interaction_kernel_reduced(alpha, t, rx, ry, dist, cfg);
        CHECK(terms.total() == doctest::Approx(total).epsilon(1e-12));
    }
}

TEST_CASE("interaction kernel log form tracks the explosion as alpha -> -inf") {
    const SpacePoint x(0.5, 0.0, 0.0), y(0.0, 1.2, 0.0);
    double prev = -1e300;
    for (double alpha : {-1.0, -3.0, -10.0, -30.0}) {
        const double lg = interaction_kernel_log(alpha, 1.0, x, y, cfg);
        CHECK(lg > prev);
        prev = lg;
    }
    CHECK(prev > 100.0);  // far beyond anything representable linearly
    // agreement with the linear kernel in range
    const double lin = interaction_kernel(-0.5, 0.7, x, y, cfg);
    CHECK(interaction_kernel_log(-0.5, 0.7, x, y, cfg) ==
          doctest::Approx(std::log(lin)).epsilon(1e-12));
}

TEST_CASE("scaling identity residual") {
    const SpacePoint x(0.5, 0.0, 0.0), y(2.0, 0.0, 0.0);
    SUBCASE("k = 1 is exact") {
        CHECK(verify_scaling(-1.0, 0.4, 1.0, x, y, cfg) == 0.0);
    }
    SUBCASE("alpha = 0") {
        const double value = interaction_kernel(0.0, 0.4, x, y, cfg);
        CHECK(std::abs(verify_scaling(0.0, 0.4, 17.3, x, y, cfg)) <= 1e-12 * value);
    }
    SUBCASE("paper example alpha=-2, k=100") {
        const double value = interaction_kernel(-2.0, 0.3, x, y, cfg);
        CHECK(std::abs(verify_scaling(-2.0, 0.3, 100.0, x, y, cfg)) <= 1e-12 * value);
    }
    SUBCASE("random well-conditioned grid") {
        testsupport::Rng rng(99);
        int tested = 0;
        while (tested < 125) {
            const double alpha = rng.uniform(-1.5, 3.0);
            const double t = rng.log_uniform(0.05, 1.5);
            const double k = rng.log_uniform(0.1, 10.0);
            const SpacePoint xx = SpacePoint::on_axis(rng.log_uniform(0.2, 5.0));
            const SpacePoint yy(rng.uniform(0.2, 5.0), rng.uniform(-2.0, 2.0), 0.0);
            if (!representable(std::min(alpha, 0.0), t, xx.norm() + yy.norm())) continue;
            const double value = interaction_kernel(alpha, t, xx, yy, cfg);
            CHECK(std::abs(verify_scaling(alpha, t, k, xx, yy, cfg)) <= 1e-12 * value);
            ++tested;
        }
    }
}

TEST_CASE("regularizer h") {
    CHECK(regularizer_h(0.0, 0.25) == doctest::Approx(pi * pi / 4.0 * 0.25));
    const double alpha = 2.0;
    CHECK(regularizer_h(alpha, 1.0 / (32.0 * alpha)) == doctest::Approx(0.0).epsilon(1e-18));
    CHECK(regularizer_h(1.0, 0.01) ==
          doctest::Approx(pi * pi / 4.0 * 0.01 - 8.0 * pi * pi * 1e-4).epsilon(1e-14));
    CHECK_THROWS_AS(regularizer_h(1.0, 0.0), std::domain_error);
}

TEST_CASE("scattering length") {
    CHECK(scattering_length(-1.0 / (4.0 * pi)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(scattering_length(-10.0) == doctest::Approx(1.0 / (40.0 * pi)).epsilon(1e-15));
    double prev = std::numeric_limits<double>::infinity();
    for (double alpha : {-1.0, -10.0, -100.0}) {
        const double sl = scattering_length(alpha);
        CHECK(sl < prev);
        prev = sl;
    }
    CHECK_THROWS_WITH_AS(scattering_length(0.5),
                         doctest::Contains("point spectrum"), std::domain_error);
}

namespace {
// non-free kernel part as a radial function of |z| for fixed source radius
RadialTestFunction nonfree_profile(double alpha, double s, double r_source) {
    RadialTestFunction f;
    f.eval = [alpha, s, r_source](double rz) {
        return rz > 0.0 ? interaction_nonfree(alpha, s, r_source, rz) : 0.0;
    };
    f.dominating_constant = 2.0 * s / r_source * free_kernel_radial(s, r_source);
    f.singularity_exponent = 1.0;
    f.support_max = r_source + 30.0 * std::sqrt(s) + 10.0;
    f.description = "nonfree_kernel_slice";
    return f;
}
}  // namespace

TEST_CASE("chapman-kolmogorov at the kernel level") {
    // int p_s^a(x,z) p_t^a(z,y) dz decomposed into free*free (closed form),
    // two radial cross terms, and one radial product term
    for (const auto& [s, t, rx, ry, alpha] :
         {std::tuple{0.3, 0.5, 0.7, 1.0, -1.0}, std::tuple{0.5, 0.5, 1.3, 1.0, 0.5}}) {
        const SpacePoint x = SpacePoint::on_axis(rx), y = SpacePoint::on_axis(ry);
        const double free_free = free_kernel_radial(s + t, std::abs(rx - ry));
        const auto g_s = nonfree_profile(alpha, s, rx);
        const auto g_t = nonfree_profile(alpha, t, ry);
        const double cross_1 = radial_integral_against_free_kernel(t, ry, g_s, cfg);
        const double cross_2 = radial_integral_against_free_kernel(s, rx, g_t, cfg);
        auto product = [&](double rz) {
            return rz * rz * interaction_nonfree(alpha, s, rx, rz, cfg) *
                   interaction_nonfree(alpha, t, rz, ry, cfg);
        };
        std::vector<double> breaks = geometric_refinement(0.0, 0.1, 20);
        for (double b : {rx, ry, rx + ry}) breaks.push_back(b);
        const double upper = rx + ry + 26.0 * std::sqrt(std::max(s, t));
        const double product_term =
            4.0 * pi * integrate(product, 0.0, upper, breaks, cfg).value;
        const double lhs = free_free + cross_1 + cross_2 + product_term;
        const double rhs = interaction_kernel(alpha, s + t, x, y, cfg);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-4));
    }
}

TEST_CASE("non-free part solves the radial heat equation at second order") {
    // residual of dt N = (1/r) d^2(r N)/dr^2 under central differences
    const double alpha = -1.0, t0 = 0.5, rx0 = 0.9, ry = 1.2;
    auto w = [&](double t, double rx) { return rx * interaction_nonfree(alpha, t, rx, ry, cfg); };
    auto residual = [&](double h) {
        const double dt = (w(t0 + h, rx0) - w(t0 - h, rx0)) / (2.0 * h);
        const double drr = (w(t0, rx0 + h) - 2.0 * w(t0, rx0) + w(t0, rx0 - h)) / (h * h);
        return std::abs(dt - drr);
    };
    const double r1 = residual(0.08), r2 = residual(0.04), r3 = residual(0.02);
    CHECK(r1 / r2 > 3.0);
    CHECK(r2 / r3 > 3.0);
}
