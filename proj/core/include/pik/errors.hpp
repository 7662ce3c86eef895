#pragma once

#include <stdexcept>
#include <string>

namespace pik {

/// Invalid or inconsistent run configuration (bad JSON, schema violation).
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical failure at runtime (non-convergence, overflow, inconsistency).
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

/// A value whose natural-log magnitude exceeds double range. Carries the
/// exponent so callers can fall back to log-space evaluation.
class magnitude_overflow : public numeric_error {
public:
    magnitude_overflow(const std::string& what, double log_magnitude)
        : numeric_error(what + " (log magnitude " + std::to_string(log_magnitude) + ")"),
          log_magnitude_(log_magnitude) {}

    double log_magnitude() const noexcept { return log_magnitude_; }

private:
    double log_magnitude_;
};

/// Quadrature failed to reach the requested tolerance.
class quadrature_error : public numeric_error {
public:
    quadrature_error(const std::string& what, double achieved_tolerance)
        : numeric_error(what + " (achieved tolerance " + std::to_string(achieved_tolerance) + ")"),
          achieved_(achieved_tolerance) {}

    double achieved_tolerance() const noexcept { return achieved_; }

private:
    double achieved_;
};

}  // namespace pik
