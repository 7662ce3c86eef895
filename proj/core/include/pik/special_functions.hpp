#pragma once

namespace pik {

// Natural-log overflow threshold of double, log(DBL_MAX).
inline constexpr double log_double_max = 709.782712893384;

/// Scaled complementary error function erfcx(x) = exp(x^2) erfc(x) for x >= 0.
/// Uses exp(x^2)*erfc(x) for small x and a continued fraction beyond; both
/// branches are uniformly stable on the nonnegative axis.
double erfcx_nonneg(double x);

/// erfcx on the whole line. Arguments below `switchover` (default 0) go
/// through the reflection formula erfcx(x) = 2 exp(x^2) - erfcx(-x); arguments
/// in [switchover, 0) use the direct product, which is also cancellation-free.
/// Throws magnitude_overflow once 2 exp(x^2) exceeds double range.
double erfcx(double x, double switchover = 0.0);

/// log(erfcx(x)), finite for every x. The reflection branch becomes
/// x^2 + log(2 - exp(-x^2) erfcx(-x)) whose correction term lives in [1, 2].
double log_erfcx(double x);

/// log(1 - exp(-a)) for a > 0, stable for both tiny and large a.
double log1mexp(double a);

/// log(exp(a) + exp(b)) without overflow.
double log_sum_exp(double a, double b);
double log_sum_exp(double a, double b, double c);

}  // namespace pik
