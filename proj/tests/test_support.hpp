#pragma once

// Shared helpers for the test suites. The integration and kernel oracles here
// are deliberately independent of the library's quadrature and
// special-function code paths.

#include <cmath>
#include <functional>
#include <random>

namespace testsupport {

// Composite Simpson rule; the reference integrator for [DERIVED] values.
inline double simpson(const std::function<double(double)>& f, double a, double b, int intervals) {
    if (intervals % 2 != 0) ++intervals;
    const double h = (b - a) / intervals;
    double acc = f(a) + f(b);
    for (int i = 1; i < intervals; ++i) acc += f(a + h * i) * (i % 2 == 0 ? 2.0 : 4.0);
    return acc * h / 3.0;
}

// Free heat kernel evaluated in extended precision, straight from the formula.
inline double free_kernel_reference(double t, double dist) {
    const long double pi = 3.14159265358979323846264338328L;
    const long double tt = t;
    const long double d = dist;
    return static_cast<double>(powl(4.0L * pi * tt, -1.5L) * expl(-d * d / (4.0L * tt)));
}

// erfcx oracle: erfcx(x) = (2/sqrt(pi)) int_0^inf exp(-s^2 - 2 s x) ds.
inline double erfcx_reference(double x) {
    const double upper = x > 1.0 ? 30.0 / x + 1.0 : 8.0;
    auto integrand = [x](double s) { return std::exp(-s * s - 2.0 * s * x); };
    return 2.0 / std::sqrt(3.14159265358979323846) * simpson(integrand, 0.0, upper, 200000);
}

struct Rng {
    std::mt19937_64 engine;
    explicit Rng(std::uint64_t seed) : engine(seed) {}
    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(engine);
    }
    double log_uniform(double lo, double hi) {
        return std::exp(uniform(std::log(lo), std::log(hi)));
    }
};

}  // namespace testsupport
