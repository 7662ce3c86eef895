#include "pik/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "pik/errors.hpp"

namespace pik {

void KernelEvalConfig::validate() const {
    if (!(quadrature_abs_tol > 0.0) || !(quadrature_rel_tol > 0.0))
        throw std::domain_error("KernelEvalConfig: tolerances must be strictly positive");
    if (max_subdivisions < 1)
        throw std::domain_error("KernelEvalConfig: max_subdivisions must be >= 1");
}

namespace {

// 15-point Kronrod extension of 7-point Gauss (QUADPACK QK15 constants).
constexpr double xgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
constexpr double wgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double wg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct Segment {
    double a, b;
    double value;
    double error;
};

Segment gk15(const Integrand& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - h * xgk[i]);
        fv[14 - i] = f(c + h * xgk[i]);
    }
    fv[7] = f(c);
    double kronrod = wgk[7] * fv[7];
    double gauss = wg[3] * fv[7];
    for (int i = 0; i < 7; ++i) kronrod += wgk[i] * (fv[i] + fv[14 - i]);
    for (int i = 0; i < 4; ++i) {
        const int j = 2 * i + 1;
        if (j < 7) gauss += wg[i] * (fv[j] + fv[14 - j]);
    }
    const double value = kronrod * h;
    double err = std::abs((kronrod - gauss) * h);
    // QUADPACK-style sharpening of the raw difference estimate.
    double resabs = 0.0;
    for (int i = 0; i < 15; ++i) resabs += std::abs(fv[i]);
    resabs *= std::abs(h) * wgk[7];
    if (resabs > 0.0 && err > 0.0) {
        const double scaled = std::pow(200.0 * err / resabs, 1.5);
        if (scaled < 1.0) err = resabs * scaled;
    }
    return {a, b, value, err};
}

struct ErrorOrder {
    bool operator()(const Segment& lhs, const Segment& rhs) const { return lhs.error < rhs.error; }
};

QuadratureResult adapt(const Integrand& f, std::vector<Segment> initial, const KernelEvalConfig& cfg) {
    std::priority_queue<Segment, std::vector<Segment>, ErrorOrder> queue;
    double value = 0.0, error = 0.0;
    int evaluations = 0;
    for (const auto& seg : initial) {
        value += seg.value;
        error += seg.error;
        evaluations += 15;
        queue.push(seg);
    }
    int splits = 0;
    auto tolerance = [&](double v) {
        return std::max(cfg.quadrature_abs_tol, cfg.quadrature_rel_tol * std::abs(v));
    };
    while (error > tolerance(value) && splits < cfg.max_subdivisions) {
        Segment worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // Interval at rounding resolution; its error cannot shrink further.
            queue.push({worst.a, worst.b, worst.value, 0.0});
            error -= worst.error;
            continue;
        }
        Segment left = gk15(f, worst.a, mid);
        Segment right = gk15(f, mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        evaluations += 30;
        ++splits;
        queue.push(left);
        queue.push(right);
    }
    QuadratureResult result{value, error, evaluations, error <= tolerance(value)};
    if (!result.converged)
        throw quadrature_error("adaptive quadrature did not converge",
                               std::abs(value) > 0 ? error / std::abs(value) : error);
    return result;
}

std::vector<double> clean_breaks(double a, double b, const std::vector<double>& breakpoints) {
    std::vector<double> pts{a, b};
    for (double p : breakpoints)
        if (p > a && p < b) pts.push_back(p);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

}  // namespace

QuadratureResult integrate(const Integrand& f, double a, double b, const KernelEvalConfig& cfg) {
    return integrate(f, a, b, {}, cfg);
}

QuadratureResult integrate(const Integrand& f, double a, double b,
                           const std::vector<double>& breakpoints, const KernelEvalConfig& cfg) {
    if (!(b > a)) {
        if (b == a) return {0.0, 0.0, 0, true};
        throw std::domain_error("integrate: inverted interval");
    }
    const auto pts = clean_breaks(a, b, breakpoints);
    std::vector<Segment> initial;
    initial.reserve(pts.size() - 1);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) initial.push_back(gk15(f, pts[i], pts[i + 1]));
    return adapt(f, std::move(initial), cfg);
}

QuadratureResult integrate_to_infinity(const Integrand& f, double a, const KernelEvalConfig& cfg) {
    auto transformed = [&f, a](double x) {
        const double denom = 1.0 - x;
        const double u = a + x / denom;
        return f(u) / (denom * denom);
    };
    // 1.0 is never evaluated: GK nodes are interior.
    return integrate(transformed, 0.0, 1.0, {0.5, 0.9, 0.99}, cfg);
}

double integrate_log(const std::function<double(double)>& g, double a, double b,
                     const std::vector<double>& breakpoints, const KernelEvalConfig& cfg) {
    if (!(b > a)) {
        if (b == a) return -std::numeric_limits<double>::infinity();
        throw std::domain_error("integrate_log: inverted interval");
    }
    const auto pts = clean_breaks(a, b, breakpoints);
    // Coarse scan for the peak of g: subdivide every segment uniformly.
    double peak = -std::numeric_limits<double>::infinity();
    constexpr int scan_per_segment = 33;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        for (int j = 0; j <= scan_per_segment; ++j) {
            const double x = pts[i] + (pts[i + 1] - pts[i]) * j / scan_per_segment;
            peak = std::max(peak, g(x));
        }
    }
    if (peak == -std::numeric_limits<double>::infinity()) return peak;
    auto normalized = [&g, peak](double x) {
        const double v = g(x);
        return v == -std::numeric_limits<double>::infinity() ? 0.0 : std::exp(v - peak);
    };
    const auto result = integrate(normalized, a, b, breakpoints, cfg);
    if (result.value <= 0.0) return -std::numeric_limits<double>::infinity();
    return peak + std::log(result.value);
}

namespace {
// 12-point Gauss-Legendre rule on [-1, 1], positive half.
constexpr double gl12_x[6] = {0.125233408511469, 0.367831498998180, 0.587317954286617,
                              0.769902674194305, 0.904117256370475, 0.981560634246719};
constexpr double gl12_w[6] = {0.249147045813403, 0.233492536538355, 0.203167426723066,
                              0.160078328543346, 0.106939325995318, 0.047175336386512};
}  // namespace

PanelRule gauss_legendre_panels(const std::vector<double>& breakpoints, double max_panel_width) {
    if (breakpoints.size() < 2) throw std::domain_error("gauss_legendre_panels: need >= 2 breakpoints");
    if (!(max_panel_width > 0.0)) throw std::domain_error("gauss_legendre_panels: bad panel width");
    PanelRule rule;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        const double lo = breakpoints[i], hi = breakpoints[i + 1];
        if (!(hi > lo)) continue;
        const int panels = std::max(1, static_cast<int>(std::ceil((hi - lo) / max_panel_width)));
        const double width = (hi - lo) / panels;
        for (int p = 0; p < panels; ++p) {
            const double c = lo + (p + 0.5) * width;
            const double h = 0.5 * width;
            for (int k = 0; k < 6; ++k) {
                rule.nodes.push_back(c - h * gl12_x[k]);
                rule.weights.push_back(h * gl12_w[k]);
                rule.nodes.push_back(c + h * gl12_x[k]);
                rule.weights.push_back(h * gl12_w[k]);
            }
        }
    }
    return rule;
}

std::vector<double> geometric_refinement(double a, double scale, int count) {
    std::vector<double> pts;
    double step = scale;
    for (int i = 0; i < count; ++i) {
        pts.push_back(a + step);
        step *= 0.5;
    }
    std::sort(pts.begin(), pts.end());
    return pts;
}

}  // namespace pik
