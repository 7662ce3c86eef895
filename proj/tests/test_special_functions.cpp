#include <doctest.h>

#include <cmath>

#include "pik/errors.hpp"
#include "pik/special_functions.hpp"
#include "test_support.hpp"

using namespace pik;

TEST_CASE("erfcx matches the integral representation on the nonnegative axis") {
    for (double x : {0.0, 0.3, 1.0, 2.5, 3.9, 4.0, 4.1, 6.0, 10.0, 15.0, 26.0, 40.0}) {
        const double expected = testsupport::erfcx_reference(x);
        CHECK(erfcx_nonneg(x) == doctest::Approx(expected).epsilon(5e-8));
    }
}

TEST_CASE("erfcx branch handover is smooth around the continued-fraction switch") {
    CHECK(erfcx_nonneg(3.9999) == doctest::Approx(erfcx_nonneg(4.0001)).epsilon(1e-5));
    CHECK(std::exp(16.0) * std::erfc(4.0) == doctest::Approx(erfcx_nonneg(4.0 + 1e-14)).epsilon(1e-12));
}

TEST_CASE("erfcx reflection branch agrees with exp(x^2) erfc(x)") {
    for (double x : {-0.2, -1.0, -3.0, -7.5, -15.0}) {
        const double direct = std::exp(x * x) * std::erfc(x);
        CHECK(erfcx(x) == doctest::Approx(direct).epsilon(1e-12));
    }
}

TEST_CASE("erfcx switchover selects an equivalent negative-argument strategy") {
    for (double x : {-0.5, -2.0, -4.5}) {
        const double reflected = erfcx(x, 0.0);
        const double direct = erfcx(x, -6.0);
        CHECK(reflected == doctest::Approx(direct).epsilon(1e-13));
    }
}

TEST_CASE("erfcx overflows loudly for strongly negative arguments") {
    CHECK_THROWS_AS(erfcx(-27.0), magnitude_overflow);
    try {
        erfcx(-27.0);
    } catch (const magnitude_overflow& e) {
        CHECK(e.log_magnitude() == doctest::Approx(27.0 * 27.0));
    }
}

TEST_CASE("log_erfcx is consistent with the linear evaluation") {
    for (double x : {-20.0, -5.0, -1.0, 0.0, 2.0, 10.0, 50.0}) {
        const double lg = log_erfcx(x);
        if (x >= -20.0 && x * x < 700.0) CHECK(lg == doctest::Approx(std::log(erfcx(x))).epsilon(1e-12));
    }
    // far negative: the correction term collapses to log 2
    CHECK(log_erfcx(-100.0) == doctest::Approx(10000.0 + std::log(2.0)));
}

TEST_CASE("log helpers") {
    CHECK(log1mexp(1e-12) == doctest::Approx(std::log(1e-12)).epsilon(1e-9));
    CHECK(log1mexp(50.0) == doctest::Approx(-std::exp(-50.0)).epsilon(1e-6));
    CHECK(log_sum_exp(0.0, 0.0) == doctest::Approx(std::log(2.0)));
    CHECK(log_sum_exp(1000.0, 1000.0) == doctest::Approx(1000.0 + std::log(2.0)));
    CHECK(log_sum_exp(-1e300, 0.0) == doctest::Approx(0.0));
}
