#include <doctest.h>

#include <cmath>
#include <limits>
#include <tuple>

#include "pik/errors.hpp"
#include "pik/function_space.hpp"
#include "pik/kernel.hpp"
#include "test_support.hpp"

using namespace pik;

namespace {
constexpr double pi = 3.14159265358979323846;
const KernelEvalConfig cfg{};
}  // namespace

TEST_CASE("reference weight values and homogeneity") {
    CHECK(reference_weight(SpacePoint(1.0, 0.0, 0.0)) == 1.0);
    CHECK(reference_weight(SpacePoint(0.0, 2.0, 0.0)) == 0.5);
    CHECK_THROWS_AS(reference_weight_radial(0.0), std::domain_error);
    testsupport::Rng rng(3);
    for (int i = 0; i < 10; ++i) {
        const double k = rng.log_uniform(0.01, 100.0);
        const SpacePoint x(rng.uniform(0.1, 2), rng.uniform(-1, 1), rng.uniform(-1, 1));
        CHECK(reference_weight(x.scaled(std::sqrt(k))) ==
              doctest::Approx(reference_weight(x) / std::sqrt(k)).epsilon(1e-14));
    }
}

TEST_CASE("phi norm: zero, mollified indicator, divergence marker") {
    const auto zero = mollified_indicator(1.0, 2.0, 0.1, 0.0);
    CHECK(phi_norm(zero, 1.5, cfg).value == 0.0);

    // the exact indicator gives (4 pi int_1^2 r dr)^(2/3) = (6 pi)^(2/3)
    const double exact = std::pow(6.0 * pi, 2.0 / 3.0);
    const auto f = mollified_indicator(1.0, 2.0, 0.01, 1.0);
    const auto norm = phi_norm(f, 1.5, cfg);
    CHECK(norm.finite);
    CHECK(norm.value == doctest::Approx(exact).epsilon(2e-3));
    // oracle recomputation of the exact indicator by an independent rule
    const double oracle =
        std::pow(4.0 * pi * testsupport::simpson([](double r) { return r; }, 1.0, 2.0, 1000),
                 2.0 / 3.0);
    CHECK(oracle == doctest::Approx(exact).epsilon(1e-12));

    // the reference weight itself diverges at infinity for rho = 1.5
    const auto diverging = phi_norm(reference_weight_profile(), 1.5, cfg);
    CHECK_FALSE(diverging.finite);
    CHECK(std::isinf(diverging.value));

    CHECK_THROWS_AS(phi_norm(f, 1.0, cfg), std::domain_error);
    CHECK_THROWS_AS(phi_norm(f, 2.0, cfg), std::domain_error);
}

TEST_CASE("phi norm homogeneity") {
    const auto f = mollified_indicator(0.5, 3.0, 0.2, 1.0);
    const double base = phi_norm(f, 1.3, cfg).value;
    for (double lambda : {0.25, 2.0, 17.0}) {
        const auto scaled = scaled_profile(f, 1.0, lambda);
        CHECK(phi_norm(scaled, 1.3, cfg).value == doctest::Approx(lambda * base).epsilon(1e-10));
    }
}

TEST_CASE("pairing of measures against test functions") {
    const auto weight = reference_weight_profile();
    const SpacePoint x(0.6, 0.8, 0.0);  // |x| = 1
    CHECK(pair(delta_measure(x), weight) == doctest::Approx(1.0).epsilon(1e-14));

    AtomicMeasure mu;
    mu.add(SpacePoint::on_axis(1.0), 2.0);
    mu.add(SpacePoint::on_axis(4.0), 4.0);
    CHECK(pair(mu, weight) == doctest::Approx(3.0).epsilon(1e-14));

    // additivity in atoms
    AtomicMeasure nu;
    nu.add(SpacePoint(0.3, 0.4, 0.0), 0.7);
    AtomicMeasure joined = mu;
    joined.add(SpacePoint(0.3, 0.4, 0.0), 0.7);
    CHECK(pair(joined, weight) == doctest::Approx(pair(mu, weight) + pair(nu, weight)));

    CHECK(AtomicMeasure{}.reference_pairing() == 0.0);
    CHECK_THROWS_AS(mu.add(SpacePoint::on_axis(1.0), 0.0), std::domain_error);
}

TEST_CASE("free-kernel radial integral: gaussian convolution closed form") {
    // f = p_{t0}(|.|) convolves to p_{t+t0}(rx)
    for (const auto& [t, t0, rx, amp] :
         {std::tuple{0.5, 0.25, 1.0, 1.0}, std::tuple{1.0, 2.0, 0.2, 3.5},
          std::tuple{0.1, 0.05, 2.5, 1.0}}) {
        const auto f = heat_gaussian(t0, amp);
        const double value = radial_integral_against_free_kernel(t, rx, f, cfg);
        CHECK(value == doctest::Approx(amp * free_kernel_radial(t + t0, rx)).epsilon(1e-9));
    }
}

TEST_CASE("free-kernel radial integral: heat flow preserves constants") {
    const auto f = constant_ball(2.0, 40.0, 1.0);
    CHECK(radial_integral_against_free_kernel(0.3, 1.0, f, cfg) ==
          doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("free flow of the reference weight: erf identity and domination with C = 1") {
    const auto weight = reference_weight_profile();
    for (double t : {0.1, 0.5, 2.0}) {
        for (double rx : {0.05, 0.5, 1.0, 4.0}) {
            const double value = radial_integral_against_free_kernel(t, rx, weight, cfg);
            const double expected = std::erf(rx / (2.0 * std::sqrt(t))) / rx;
            CHECK(value == doctest::Approx(expected).epsilon(1e-9));
            CHECK(value <= (1.0 + 1e-9) * reference_weight_radial(rx));  // S_t phi <= phi
        }
    }
}

TEST_CASE("radial reduction agrees with naive spherical-product quadrature") {
    testsupport::Rng rng(17);
    for (int i = 0; i < 3; ++i) {
        const double t = rng.log_uniform(0.2, 1.5);
        const double rx = rng.log_uniform(0.3, 2.0);
        const auto f = mollified_indicator(0.5, 2.5, 0.2, rng.uniform(0.5, 2.0));
        const double reduced = radial_integral_against_free_kernel(t, rx, f, cfg);
        const double naive = spherical_product_integral_against_free_kernel(t, rx, f, cfg);
        CHECK(reduced == doctest::Approx(naive).epsilon(1e-7));
    }
}

TEST_CASE("radial reduction agrees with 3d monte carlo within 3 standard errors") {
    testsupport::Rng rng(29);
    for (int i = 0; i < 10; ++i) {
        const double t = rng.log_uniform(0.2, 2.0);
        const double rx = rng.log_uniform(0.3, 3.0);
        const double width = rng.uniform(0.1, 0.4);
        const auto f = mollified_indicator(0.5, 2.5, width, 1.0);
        const double reduced = radial_integral_against_free_kernel(t, rx, f, cfg);
        const auto mc = monte_carlo_integral_against_free_kernel(
            t, SpacePoint::on_axis(rx), [&f](const SpacePoint& y) { return f(y.norm()); }, 1000000,
            1000 + i);
        CHECK(std::abs(mc.mean - reduced) <= 3.0 * mc.std_error);
    }
}

TEST_CASE("interaction-term radial integral: alpha = 0 collapse to the image term") {
    const double t = 0.7, rx = 1.1;
    const auto f = mollified_indicator(1.0, 2.0, 0.1, 1.0);
    const double combined = radial_integral_against_interaction_terms(t, rx, f, 0.0, cfg);
    const double image = radial_integral_against_image_term(t, rx, f, cfg);
    CHECK(combined == doctest::Approx(image).epsilon(1e-13));
    // simpson oracle of (8 pi t / rx) int r f p_t(r + rx) dr on the support
    const double oracle =
        8.0 * pi * t / rx *
        testsupport::simpson(
            [&](double r) { return r * f(r) * testsupport::free_kernel_reference(t, r + rx); },
            0.9, 2.1, 20000);
    CHECK(combined == doctest::Approx(oracle).epsilon(1e-7));
    CHECK(radial_integral_against_alpha_term(t, rx, f, 0.0, cfg) == 0.0);
}

TEST_CASE("interaction-term radial integral vanishes as alpha grows") {
    const double t = 0.5, rx = 0.8;
    const auto f = mollified_indicator(0.5, 1.5, 0.1, 1.0);
    double prev = std::numeric_limits<double>::infinity();
    for (double alpha : {1e1, 1e2, 1e3, 1e4}) {
        const double v = radial_integral_against_interaction_terms(t, rx, f, alpha, cfg);
        CHECK(v >= 0.0);
        CHECK(v < prev);
        prev = v;
    }
    CHECK(prev < 1e-4);
}

TEST_CASE("interaction-term radial integral: shrinking bump reaches the delta limit") {
    const double t = 0.6, rx = 0.9, r0 = 1.4, alpha = -0.7;
    const double target = (2.0 * t / (rx * r0)) * kernel_bracket(alpha, t, r0 + rx, cfg);
    std::vector<double> errs;
    for (double width : {0.1, 0.05, 0.025}) {
        const auto bump = radial_bump(r0, width);
        const double value = radial_integral_against_interaction_terms(t, rx, bump, alpha, cfg);
        errs.push_back(std::abs(value - target) / target);
        if (errs.size() > 1) CHECK(errs.back() < errs[errs.size() - 2]);
    }
    // second-order rate in the width and closeness at the narrowest bump
    CHECK(errs[1] / errs[2] == doctest::Approx(4.0).epsilon(0.3));
    CHECK(errs.back() < 2e-3);
}

TEST_CASE("log-space radial integrals match linear ones in range") {
    const double t = 0.8, rx = 1.2, alpha = -0.6;
    const auto f = mollified_indicator(0.5, 2.0, 0.15, 1.0);
    const double lin_free = radial_integral_against_free_kernel(t, rx, f, cfg);
    CHECK(radial_integral_against_free_kernel_log(t, rx, f, cfg) ==
          doctest::Approx(std::log(lin_free)).epsilon(1e-9));
    const double lin_int = radial_integral_against_interaction_terms(t, rx, f, alpha, cfg);
    CHECK(radial_integral_against_interaction_terms_log(t, rx, f, alpha, cfg) ==
          doctest::Approx(std::log(lin_int)).epsilon(1e-9));
}

TEST_CASE("profile JSON parsing") {
    using nlohmann::json;
    const auto f = radial_profile_from_json(json{{"profile", "indicator"},
                                                 {"a", 1.0},
                                                 {"b", 2.0},
                                                 {"width", 0.1},
                                                 {"amplitude", 2.0}});
    CHECK(f(1.5) == doctest::Approx(2.0));
    CHECK(f(3.0) == 0.0);
    const auto g = radial_profile_from_json(json{{"profile", "reference_weight"}, {"val_scale", 3.0}});
    CHECK(g(2.0) == doctest::Approx(1.5));
    CHECK_THROWS_AS(radial_profile_from_json(json{{"profile", "nope"}}), config_error);
    CHECK_THROWS_AS(radial_profile_from_json(json{{"profile", "indicator"}, {"a", 1.0}}),
                    config_error);
    CHECK_FALSE(reference_weight_profile().in_phi_cone());
    CHECK(mollified_indicator(1.0, 2.0, 0.1).in_phi_cone());
}

TEST_CASE("measure JSON parsing") {
    using nlohmann::json;
    const auto mu = AtomicMeasure::from_json(
        json{{"atoms", json::array({json{{"r", 2.0}, {"w", 1.0}},
                                    json{{"x", json::array({0.0, 1.0, 0.0})}, {"w", 0.5}}})}});
    CHECK(mu.size() == 2);
    CHECK(mu.reference_pairing() == doctest::Approx(1.0));
    CHECK_THROWS_AS(AtomicMeasure::from_json(json{{"atoms", json::array({json{{"w", 1.0}}})}}),
                    config_error);
    CHECK_THROWS_AS(AtomicMeasure::from_json(nlohmann::json::array()), config_error);
}
