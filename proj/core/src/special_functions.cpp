#include "pik/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pik/errors.hpp"

namespace pik {

namespace {

// Continued fraction erfcx(x) = (1/sqrt(pi)) / (x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
// evaluated bottom-up. Converges rapidly for x >= 4.
double erfcx_continued_fraction(double x) {
    constexpr double inv_sqrt_pi = 0.5641895835477562869;
    constexpr int depth = 64;
    double tail = 0.0;
    for (int n = depth; n >= 1; --n) tail = (0.5 * n) / (x + tail);
    return inv_sqrt_pi / (x + tail);
}

}  // namespace

double erfcx_nonneg(double x) {
    if (x < 0.0) throw std::domain_error("erfcx_nonneg: negative argument");
    if (x < 4.0) return std::exp(x * x) * std::erfc(x);
    return erfcx_continued_fraction(x);
}

double erfcx(double x, double switchover) {
    if (x >= 0.0) return erfcx_nonneg(x);
    const double x2 = x * x;
    if (x2 > log_double_max - 0.6931471805599453)
        throw magnitude_overflow("erfcx: reflection branch overflows", x2);
    if (x >= switchover) return std::exp(x2) * std::erfc(x);
    return 2.0 * std::exp(x2) - erfcx_nonneg(-x);
}

double log_erfcx(double x) {
    if (x >= 0.0) return std::log(erfcx_nonneg(x));
    const double x2 = x * x;
    // exp(-x^2) underflows harmlessly to 0, leaving log(2).
    const double correction = 2.0 - std::exp(-x2) * erfcx_nonneg(-x);
    return x2 + std::log(correction);
}

double log1mexp(double a) {
    if (a <= 0.0) throw std::domain_error("log1mexp: argument must be positive");
    constexpr double ln2 = 0.6931471805599453;
    if (a < ln2) return std::log(-std::expm1(-a));
    return std::log1p(-std::exp(-a));
}

double log_sum_exp(double a, double b) {
    if (a == -std::numeric_limits<double>::infinity()) return b;
    if (b == -std::numeric_limits<double>::infinity()) return a;
    const double m = std::max(a, b);
    return m + std::log1p(std::exp(std::min(a, b) - m));
}

double log_sum_exp(double a, double b, double c) {
    const double m = std::max({a, b, c});
    if (m == -std::numeric_limits<double>::infinity()) return m;
    return m + std::log(std::exp(a - m) + std::exp(b - m) + std::exp(c - m));
}

}  // namespace pik
