#include "pik/radial_grid.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

namespace pik {

std::vector<double> log_spaced_radii(double r_min, double r_max, int count) {
    if (!(r_min > 0.0) || !(r_max > r_min)) throw std::domain_error("log_spaced_radii: bad range");
    if (count < 2) throw std::domain_error("log_spaced_radii: need at least two nodes");
    std::vector<double> radii(count);
    const double lo = std::log(r_min), hi = std::log(r_max);
    for (int i = 0; i < count; ++i) radii[i] = std::exp(lo + (hi - lo) * i / (count - 1));
    radii.front() = r_min;
    radii.back() = r_max;
    return radii;
}

RadialFunctionGrid::RadialFunctionGrid(std::vector<double> radii, std::vector<double> values)
    : radii_(std::move(radii)), values_(std::move(values)) {
    if (radii_.size() != values_.size() || radii_.size() < 4)
        throw std::domain_error("RadialFunctionGrid: need matching arrays with >= 4 nodes");
    x_.resize(radii_.size());
    y_.resize(radii_.size());
    for (std::size_t i = 0; i < radii_.size(); ++i) {
        if (!(radii_[i] > 0.0) || (i > 0 && radii_[i] <= radii_[i - 1]))
            throw std::domain_error("RadialFunctionGrid: radii must be positive and increasing");
        x_[i] = std::log(radii_[i]);
        y_[i] = radii_[i] * values_[i];
    }
}

RadialFunctionGrid::Stencil RadialFunctionGrid::stencil(double r) const {
    Stencil s;
    if (!(r > 0.0)) throw std::domain_error("RadialFunctionGrid: radius must be positive");
    const int n = static_cast<int>(radii_.size());
    if (r <= radii_.front()) {
        // c/r continuation: f(r) = y_0 / r = (r_0 / r) f(r_0)
        s.index = {0, 0, 0, 0};
        s.weight = {radii_.front() / r, 0.0, 0.0, 0.0};
        s.size = 1;
        return s;
    }
    if (r >= radii_.back()) {
        if (r == radii_.back()) {
            s.index = {n - 1, 0, 0, 0};
            s.weight = {1.0, 0.0, 0.0, 0.0};
            s.size = 1;
        } else {
            s.size = 0;  // identically 0 beyond the hull
        }
        return s;
    }
    const double x = std::log(r);
    int i = static_cast<int>(std::upper_bound(x_.begin(), x_.end(), x) - x_.begin()) - 1;
    i = std::clamp(i, 0, n - 2);
    const double h = x_[i + 1] - x_[i];
    const double u = (x - x_[i]) / h;
    // Hermite basis
    const double h00 = (1.0 + 2.0 * u) * (1.0 - u) * (1.0 - u);
    const double h10 = u * (1.0 - u) * (1.0 - u);
    const double h01 = u * u * (3.0 - 2.0 * u);
    const double h11 = u * u * (u - 1.0);
    // y weights: value terms plus finite-difference slopes
    double wy[4] = {0.0, h00, h01, 0.0};  // indices i-1, i, i+1, i+2
    auto add_slope = [&wy](double coeff, int lo_off, int hi_off, double span) {
        wy[hi_off] += coeff / span;
        wy[lo_off] -= coeff / span;
    };
    if (i > 0)
        add_slope(h10 * h, 0, 2, x_[i + 1] - x_[i - 1]);
    else
        add_slope(h10 * h, 1, 2, x_[i + 1] - x_[i]);
    if (i + 2 < n)
        add_slope(h11 * h, 1, 3, x_[i + 2] - x_[i]);
    else
        add_slope(h11 * h, 1, 2, x_[i + 1] - x_[i]);
    s.size = 0;
    for (int k = 0; k < 4; ++k) {
        const int idx = i - 1 + k;
        if (wy[k] == 0.0 || idx < 0 || idx >= n) continue;
        // convert from y = r f to f: weight times r_idx / r
        s.index[s.size] = idx;
        s.weight[s.size] = wy[k] * radii_[idx] / r;
        ++s.size;
    }
    return s;
}

double RadialFunctionGrid::operator()(double r) const {
    const auto s = stencil(r);
    double v = 0.0;
    for (int k = 0; k < s.size; ++k) v += s.weight[k] * values_[s.index[k]];
    return v;
}

RadialTestFunction RadialFunctionGrid::as_test_function() const {
    RadialTestFunction f;
    // copy shared state into the closure; grids are cheap relative to solves
    auto radii = radii_;
    auto values = values_;
    auto grid = std::make_shared<RadialFunctionGrid>(std::move(radii), std::move(values));
    f.eval = [grid](double r) { return std::max(0.0, (*grid)(r)); };
    double c = 0.0;
    for (std::size_t i = 0; i < radii_.size(); ++i) c = std::max(c, y_[i]);
    f.dominating_constant = c > 0.0 ? c : 1.0;
    f.singularity_exponent = 1.0;  // conservative: c/r continuation at the origin
    f.support_max = radii_.back();
    // resolve down to the local node spacing
    f.feature_scale = radii_.front() * (std::exp(x_[1] - x_[0]) - 1.0);
    f.breakpoints = {radii_.front(), radii_[radii_.size() / 2]};
    f.description = "grid_function[n=" + std::to_string(radii_.size()) + "]";
    return f;
}

}  // namespace pik
