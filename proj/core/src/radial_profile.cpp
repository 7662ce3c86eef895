#include "pik/radial_profile.hpp"

#include <cmath>
#include <stdexcept>

#include "pik/errors.hpp"

namespace pik {

namespace {

constexpr double pi = 3.14159265358979323846;

// Quintic smoothstep: 0 below 0, 1 above 1, C^2 across the joints.
double smoothstep(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return x * x * x * (10.0 + x * (-15.0 + 6.0 * x));
}

}  // namespace

RadialTestFunction mollified_indicator(double a, double b, double width, double amplitude) {
    if (!(width > 0.0)) throw std::domain_error("mollified_indicator: width must be positive");
    if (!(b > a) || a < 0.0) throw std::domain_error("mollified_indicator: need 0 <= a < b");
    if (!(amplitude >= 0.0)) throw std::domain_error("mollified_indicator: negative amplitude");
    const bool has_inner_edge = a > 0.0;
    if (has_inner_edge && a < 0.5 * width)
        throw std::domain_error("mollified_indicator: inner edge overlaps the origin");
    if (b - a < width) throw std::domain_error("mollified_indicator: interval narrower than width");
    RadialTestFunction f;
    f.eval = [a, b, width, amplitude, has_inner_edge](double r) {
        double v = amplitude * smoothstep(((b + 0.5 * width) - r) / width);
        if (has_inner_edge) v *= smoothstep((r - (a - 0.5 * width)) / width);
        return v;
    };
    f.dominating_constant = amplitude * (b + 0.5 * width);
    f.singularity_exponent = 0.0;
    f.support_max = b + 0.5 * width;
    f.feature_scale = width;
    if (has_inner_edge) {
        f.breakpoints = {a - 0.5 * width, a + 0.5 * width, b - 0.5 * width, b + 0.5 * width};
    } else {
        f.breakpoints = {b - 0.5 * width, b + 0.5 * width};
    }
    f.description = "indicator[a=" + std::to_string(a) + ",b=" + std::to_string(b) +
                    ",width=" + std::to_string(width) + ",amplitude=" + std::to_string(amplitude) + "]";
    return f;
}

RadialTestFunction heat_gaussian(double t0, double amplitude) {
    if (!(t0 > 0.0)) throw std::domain_error("heat_gaussian: t0 must be positive");
    RadialTestFunction f;
    const double norm = std::pow(4.0 * pi * t0, -1.5);
    f.eval = [t0, amplitude, norm](double r) { return amplitude * norm * std::exp(-r * r / (4.0 * t0)); };
    // sup r f(r) at r = sqrt(2 t0)
    f.dominating_constant = amplitude * norm * std::sqrt(2.0 * t0) * std::exp(-0.5);
    f.singularity_exponent = 0.0;
    f.support_max = std::sqrt(2800.0 * t0);  // exp underflow
    f.feature_scale = std::sqrt(2.0 * t0);
    f.description = "heat_gaussian[t0=" + std::to_string(t0) + ",amplitude=" + std::to_string(amplitude) + "]";
    return f;
}

RadialTestFunction radial_bump(double center, double width) {
    if (!(width > 0.0) || !(center > width))
        throw std::domain_error("radial_bump: need center > width > 0");
    // shape (1 - x^2)^5; normalize so the 3D mass int 4 pi r^2 f dr equals 1.
    auto shape = [center, width](double r) {
        const double x = (r - center) / width;
        if (x <= -1.0 || x >= 1.0) return 0.0;
        const double u = 1.0 - x * x;
        return u * u * u * u * u;
    };
    // int (1-x^2)^5 (center + width x)^2 dx over [-1,1]; odd powers drop.
    // int (1-x^2)^5 dx = 512/693, int x^2 (1-x^2)^5 dx = 512/9009.
    const double m0 = 512.0 / 693.0, m2 = 512.0 / 9009.0;
    const double mass3d = 4.0 * pi * width * (center * center * m0 + width * width * m2);
    const double amplitude = 1.0 / mass3d;
    RadialTestFunction f;
    f.eval = [shape, amplitude](double r) { return amplitude * shape(r); };
    f.dominating_constant = amplitude * (center + width);
    f.singularity_exponent = 0.0;
    f.support_max = center + width;
    f.feature_scale = width;
    f.breakpoints = {center - width, center, center + width};
    f.description = "bump[center=" + std::to_string(center) + ",width=" + std::to_string(width) + "]";
    return f;
}

RadialTestFunction constant_ball(double value, double radius, double width) {
    auto f = mollified_indicator(0.0, radius, width, value);
    f.description = "constant_ball[value=" + std::to_string(value) +
                    ",radius=" + std::to_string(radius) + ",width=" + std::to_string(width) + "]";
    return f;
}

RadialTestFunction reference_weight_profile() {
    RadialTestFunction f;
    f.eval = [](double r) {
        if (!(r > 0.0)) throw std::domain_error("reference weight: radius must be positive");
        return 1.0 / r;
    };
    f.dominating_constant = 1.0;
    f.singularity_exponent = 1.0;
    f.description = "reference_weight";
    return f;
}

RadialTestFunction power_singularity(double xi, double radius, double width, double amplitude) {
    if (!(xi >= 0.0) || !(xi < 1.0)) throw std::domain_error("power_singularity: xi must lie in [0, 1)");
    if (!(radius > width) || !(width > 0.0))
        throw std::domain_error("power_singularity: need radius > width > 0");
    RadialTestFunction f;
    f.eval = [xi, radius, width, amplitude](double r) {
        if (!(r > 0.0)) return 0.0;
        if (r >= radius + 0.5 * width) return 0.0;
        return amplitude * std::pow(r, -xi) * smoothstep(((radius + 0.5 * width) - r) / width);
    };
    f.dominating_constant = amplitude * std::pow(radius + 0.5 * width, 1.0 - xi);
    f.singularity_exponent = xi;
    f.support_max = radius + 0.5 * width;
    f.feature_scale = width;
    f.breakpoints = {radius - 0.5 * width, radius + 0.5 * width};
    f.description = "power[xi=" + std::to_string(xi) + ",radius=" + std::to_string(radius) + "]";
    return f;
}

RadialTestFunction scaled_profile(const RadialTestFunction& f, double arg_scale, double val_scale) {
    if (!(arg_scale > 0.0)) throw std::domain_error("scaled_profile: arg_scale must be positive");
    if (!(val_scale >= 0.0)) throw std::domain_error("scaled_profile: negative val_scale");
    RadialTestFunction g;
    auto base = f.eval;
    g.eval = [base, arg_scale, val_scale](double r) { return val_scale * base(arg_scale * r); };
    g.dominating_constant = f.dominating_constant * val_scale / arg_scale;
    g.singularity_exponent = f.singularity_exponent;
    g.support_max = f.support_max / arg_scale;
    g.feature_scale = f.feature_scale / arg_scale;
    g.breakpoints.reserve(f.breakpoints.size());
    for (double b : f.breakpoints) g.breakpoints.push_back(b / arg_scale);
    g.description = "scaled[arg=" + std::to_string(arg_scale) + ",val=" + std::to_string(val_scale) +
                    "]:" + f.description;
    return g;
}

RadialTestFunction powered_profile(const RadialTestFunction& f, double power) {
    if (!(power > 0.0)) throw std::domain_error("powered_profile: power must be positive");
    RadialTestFunction g;
    auto base = f.eval;
    g.eval = [base, power](double r) { return std::pow(base(r), power); };
    g.singularity_exponent = std::min(1.0, f.singularity_exponent * power);
    // crude sup of r^xi' f^power over a sample grid; metadata only
    double c = 0.0;
    for (int i = 1; i <= 64; ++i) {
        const double r = f.support_max == std::numeric_limits<double>::infinity()
                             ? 0.01 * std::pow(1.2, i)
                             : f.support_max * i / 64.0;
        c = std::max(c, std::pow(base(r), power) * std::pow(r, g.singularity_exponent));
    }
    g.dominating_constant = c > 0.0 ? c : 1.0;
    g.support_max = f.support_max;
    g.feature_scale = f.feature_scale;
    g.breakpoints = f.breakpoints;
    g.description = "pow[" + std::to_string(power) + "]:" + f.description;
    return g;
}

RadialTestFunction radial_profile_from_json(const nlohmann::json& spec) {
    if (!spec.is_object() || !spec.contains("profile"))
        throw config_error("test function: expected an object with a \"profile\" field");
    const std::string name = spec.at("profile").get<std::string>();
    auto num = [&spec](const char* key, double fallback, bool required = false) {
        if (!spec.contains(key)) {
            if (required) throw config_error(std::string("test function: missing field \"") + key + "\"");
            return fallback;
        }
        if (!spec.at(key).is_number()) throw config_error(std::string("test function: field \"") + key + "\" must be a number");
        return spec.at(key).get<double>();
    };
    RadialTestFunction f;
    if (name == "indicator") {
        f = mollified_indicator(num("a", 0.0, true), num("b", 0.0, true), num("width", 0.1),
                                num("amplitude", 1.0));
    } else if (name == "heat_gaussian") {
        f = heat_gaussian(num("t0", 0.0, true), num("amplitude", 1.0));
    } else if (name == "bump") {
        f = radial_bump(num("center", 0.0, true), num("width", 0.0, true));
    } else if (name == "constant_ball") {
        f = constant_ball(num("value", 1.0), num("radius", 0.0, true), num("width", 1.0));
    } else if (name == "reference_weight") {
        f = reference_weight_profile();
    } else if (name == "power") {
        f = power_singularity(num("xi", 0.0, true), num("radius", 0.0, true), num("width", 0.1),
                              num("amplitude", 1.0));
    } else {
        throw config_error("test function: unknown profile \"" + name + "\"");
    }
    const double arg_scale = num("arg_scale", 1.0);
    const double val_scale = num("val_scale", 1.0);
    if (arg_scale != 1.0 || val_scale != 1.0) f = scaled_profile(f, arg_scale, val_scale);
    return f;
}

}  // namespace pik
