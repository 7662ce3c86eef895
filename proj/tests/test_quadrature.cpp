#include <doctest.h>

#include <cmath>
#include <limits>

#include "pik/errors.hpp"
#include "pik/quadrature.hpp"
#include "test_support.hpp"

using namespace pik;

namespace {
const KernelEvalConfig cfg{};
constexpr double pi = 3.14159265358979323846;
}  // namespace

TEST_CASE("config validation") {
    KernelEvalConfig bad;
    bad.quadrature_abs_tol = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::domain_error);
    bad = KernelEvalConfig{};
    bad.max_subdivisions = 0;
    CHECK_THROWS_AS(bad.validate(), std::domain_error);
}

TEST_CASE("gauss-kronrod integrates polynomials and gaussians to machine precision") {
    auto cubic = [](double x) { return x * x * x - 2.0 * x + 1.0; };
    CHECK(integrate(cubic, 0.0, 2.0, cfg).value == doctest::Approx(4.0 - 4.0 + 2.0).epsilon(1e-14));
    auto gaussian = [](double x) { return std::exp(-x * x); };
    CHECK(integrate(gaussian, -6.0, 6.0, cfg).value ==
          doctest::Approx(std::sqrt(pi)).epsilon(1e-13));
}

TEST_CASE("breakpoints let kinked integrands converge") {
    auto kinked = [](double x) { return std::abs(x - 0.3); };
    const double expected = 0.5 * (0.3 * 0.3 + 0.7 * 0.7);
    CHECK(integrate(kinked, 0.0, 1.0, {0.3}, cfg).value == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("endpoint singularities integrate with geometric refinement") {
    auto singular = [](double x) { return std::pow(x, -0.7); };
    const auto breaks = geometric_refinement(0.0, 0.5, 30);
    const double value = integrate(singular, 0.0, 1.0, breaks, cfg).value;
    CHECK(value == doctest::Approx(1.0 / 0.3).epsilon(1e-9));
}

TEST_CASE("semi-infinite transform") {
    auto decay = [](double x) { return std::exp(-x); };
    CHECK(integrate_to_infinity(decay, 0.0, cfg).value == doctest::Approx(1.0).epsilon(1e-11));
    auto gaussian = [](double x) { return std::exp(-x * x); };
    CHECK(integrate_to_infinity(gaussian, 0.0, cfg).value ==
          doctest::Approx(0.5 * std::sqrt(pi)).epsilon(1e-11));
}

TEST_CASE("log-space integration renormalizes far-out-of-range integrands") {
    // int exp(1000 - (x - 0.5)^2 / w) dx = exp(1000) sqrt(pi w) (well inside [0,1])
    const double w = 1e-4;
    auto g = [w](double x) { return 1000.0 - (x - 0.5) * (x - 0.5) / w; };
    const double expected = 1000.0 + 0.5 * std::log(pi * w);
    CHECK(integrate_log(g, 0.0, 1.0, {0.45, 0.5, 0.55}, cfg) ==
          doctest::Approx(expected).epsilon(1e-12));
    // vanishing integrand
    auto none = [](double) { return -std::numeric_limits<double>::infinity(); };
    CHECK(integrate_log(none, 0.0, 1.0, {}, cfg) == -std::numeric_limits<double>::infinity());
}

TEST_CASE("subdivision exhaustion raises quadrature_error with the achieved tolerance") {
    KernelEvalConfig tight;
    tight.max_subdivisions = 2;
    auto wiggly = [](double x) { return std::sin(200.0 * x * x); };
    CHECK_THROWS_AS(integrate(wiggly, 0.0, 3.0, tight), quadrature_error);
}

TEST_CASE("composite gauss-legendre panels") {
    // degree-23 polynomial integrated exactly by a single 12-point panel
    auto poly = [](double x) { return std::pow(x, 23) + 3.0 * std::pow(x, 10) - x; };
    const auto rule = gauss_legendre_panels({0.0, 1.0}, 1.0);
    CHECK(rule.nodes.size() == 12);
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) acc += rule.weights[i] * poly(rule.nodes[i]);
    CHECK(acc == doctest::Approx(1.0 / 24.0 + 3.0 / 11.0 - 0.5).epsilon(1e-14));

    // gaussian resolved once panels are narrower than its width
    auto gauss = [](double x) { return std::exp(-(x - 3.0) * (x - 3.0)); };
    const auto fine = gauss_legendre_panels({0.0, 6.0}, 0.5);
    acc = 0.0;
    for (std::size_t i = 0; i < fine.nodes.size(); ++i) acc += fine.weights[i] * gauss(fine.nodes[i]);
    CHECK(acc == doctest::Approx(std::sqrt(pi) * std::erf(3.0)).epsilon(1e-12));
}
