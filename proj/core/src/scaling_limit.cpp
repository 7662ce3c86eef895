#include "pik/scaling_limit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "pik/errors.hpp"
#include "pik/flow.hpp"
#include "pik/function_space.hpp"
#include "pik/kernel.hpp"
#include "pik/special_functions.hpp"

namespace pik {

namespace {
constexpr double pi = 3.14159265358979323846;
constexpr double inf = std::numeric_limits<double>::infinity();
}  // namespace

LambdaSchedule LambdaSchedule::constant(double value) {
    LambdaSchedule s;
    s.type_ = Type::constant_value;
    s.value_ = value;
    return s;
}

LambdaSchedule LambdaSchedule::inverse_sqrt() {
    LambdaSchedule s;
    s.type_ = Type::inverse_sqrt;
    return s;
}

LambdaSchedule LambdaSchedule::table(std::vector<std::pair<double, double>> entries) {
    if (entries.empty()) throw config_error("lambda schedule: empty table");
    std::sort(entries.begin(), entries.end());
    LambdaSchedule s;
    s.type_ = Type::table_lookup;
    s.table_ = std::move(entries);
    return s;
}

LambdaSchedule LambdaSchedule::from_json(const nlohmann::json& spec) {
    if (!spec.is_object() || !spec.contains("type"))
        throw config_error("lambda schedule: expected an object with a \"type\" field");
    const std::string type = spec.at("type").get<std::string>();
    if (type == "constant") return constant(spec.value("value", 1.0));
    if (type == "k_inverse_sqrt") return inverse_sqrt();
    if (type == "table") {
        if (!spec.contains("entries") || !spec.at("entries").is_array())
            throw config_error("lambda schedule: table needs an \"entries\" array of [k, lambda]");
        std::vector<std::pair<double, double>> entries;
        for (const auto& e : spec.at("entries")) {
            if (!e.is_array() || e.size() != 2)
                throw config_error("lambda schedule: table entries must be [k, lambda] pairs");
            entries.emplace_back(e[0].get<double>(), e[1].get<double>());
        }
        return table(std::move(entries));
    }
    throw config_error("lambda schedule: unknown type \"" + type + "\"");
}

double LambdaSchedule::operator()(double k) const {
    if (!(k > 0.0)) throw std::domain_error("lambda schedule: k must be positive");
    switch (type_) {
        case Type::constant_value:
            return value_;
        case Type::inverse_sqrt:
            return 1.0 / std::sqrt(k);
        case Type::table_lookup: {
            for (const auto& [kk, lambda] : table_)
                if (std::abs(kk - k) <= 1e-9 * std::max(1.0, kk)) return lambda;
            throw std::domain_error("lambda schedule: k not present in the table");
        }
    }
    throw std::logic_error("lambda schedule: unreachable");
}

std::string LambdaSchedule::describe() const {
    switch (type_) {
        case Type::constant_value:
            return "constant(" + std::to_string(value_) + ")";
        case Type::inverse_sqrt:
            return "k^{-1/2}";
        case Type::table_lookup:
            return "table(" + std::to_string(table_.size()) + " entries)";
    }
    return "?";
}

LimitRegime LimitRegime::resolve(double alpha, const LambdaSchedule& schedule,
                                 const std::vector<double>& k_range) {
    if (k_range.size() < 2) throw std::domain_error("LimitRegime: need at least two k values");
    std::vector<double> products;
    products.reserve(k_range.size());
    for (double k : k_range) products.push_back(std::sqrt(k) * schedule(k) * alpha);
    const double last = products.back();
    const double prev = products[products.size() - 2];
    ExtendedAlpha alpha_star(0.0);
    if (std::abs(last) > 1e3 && std::abs(last) > 2.0 * std::abs(prev)) {
        alpha_star = last > 0 ? ExtendedAlpha::plus_infinity() : ExtendedAlpha::minus_infinity();
        // divergence must be monotone in magnitude over the tail
        for (std::size_t i = k_range.size() / 2; i + 1 < products.size(); ++i)
            if (std::abs(products[i + 1]) < std::abs(products[i]))
                throw numeric_error("LimitRegime: k^{1/2} lambda_k alpha is not settling");
    } else {
        // finite limit: the tail must have stopped moving
        const double scale = std::max({1e-12, std::abs(last), std::abs(prev)});
        if (std::abs(last - prev) > 1e-6 * scale && std::abs(last) > 1e-12)
            throw numeric_error(
                "LimitRegime: k^{1/2} lambda_k alpha has no finite limit over the k range");
        alpha_star = ExtendedAlpha(last);
    }
    LimitRegime regime;
    regime.alpha = alpha;
    regime.schedule = schedule;
    regime.alpha_star = alpha_star;
    return regime;
}

void ConvergenceTable::append(ConvergenceRow row) {
    if (!rows.empty() && !(row.k > rows.back().k))
        throw std::domain_error("ConvergenceTable: k must be strictly increasing");
    rows.push_back(row);
}

void ConvergenceTable::write_csv(std::ostream& out) const {
    out << "k,scaled_mean,limit,abs_err,rel_err\n";
    for (const auto& row : rows)
        out << row.k << "," << row.scaled_mean << "," << row.limit_value << "," << row.abs_error
            << "," << row.rel_error << "\n";
}

double limit_kernel(const ExtendedAlpha& alpha_star, double t, const SpacePoint& x,
                    const SpacePoint& y, const KernelEvalConfig& cfg) {
    if (!(t > 0.0)) throw std::domain_error("limit_kernel: t must be positive");
    if (alpha_star.is_plus_infinity()) return 0.0;
    if (alpha_star.is_minus_infinity()) return inf;  // documented extension marker
    const double ry = y.norm();
    return (2.0 * t / (x.norm() * ry)) * kernel_bracket(alpha_star.value(), t, ry, cfg);
}

namespace {

// Route (b) of the theorem: kernel parameter k^{1/2} lambda_k alpha at time t
// with the source shrunk to k^{-1/2} x.
double scaled_mean_proof_route(double k, const LimitRegime& regime, double t,
                               const AtomicMeasure& mu, const RadialTestFunction& f,
                               const KernelEvalConfig& cfg) {
    const double lambda = regime.schedule(k);
    const double alpha_eff = std::sqrt(k) * lambda * regime.alpha;
    const double shrink = 1.0 / std::sqrt(k);
    double sum = 0.0;
    for (const auto& atom : mu.atoms()) {
        const double rx = shrink * atom.location.norm();
        sum += atom.weight * shrink * apply_semigroup_radial(alpha_eff, t, rx, f, cfg).value;
    }
    return sum;
}

double scaled_mean_direct_route(double k, const LimitRegime& regime, double t,
                                const AtomicMeasure& mu, const RadialTestFunction& f,
                                const KernelEvalConfig& cfg) {
    const double lambda = regime.schedule(k);
    const double shrink = 1.0 / std::sqrt(k);
    const auto f_scaled = scaled_profile(f, shrink, 1.0);
    return shrink * expected_measure_pairing(mu, lambda * regime.alpha, k * t, f_scaled, cfg);
}

}  // namespace

double scaled_mean(double k, const LimitRegime& regime, double t, const AtomicMeasure& mu,
                   const RadialTestFunction& f, const KernelEvalConfig& cfg) {
    if (!(k > 0.0)) throw std::domain_error("scaled_mean: k must be positive");
    const double direct = scaled_mean_direct_route(k, regime, t, mu, f, cfg);
    const double proof = scaled_mean_proof_route(k, regime, t, mu, f, cfg);
    const double scale = std::max(std::abs(direct), std::abs(proof));
    const double tolerance = cfg.quadrature_abs_tol + cfg.quadrature_rel_tol * scale;
    if (std::abs(direct - proof) > 10.0 * tolerance)
        throw numeric_error("scaled_mean: direct and proof-form routes disagree (" +
                            std::to_string(direct) + " vs " + std::to_string(proof) +
                            "), scaling bug suspected");
    return direct;
}

double limit_pairing(const ExtendedAlpha& alpha_star, double t, const AtomicMeasure& mu,
                     const RadialTestFunction& f, const KernelEvalConfig& cfg) {
    if (!(t > 0.0)) throw std::domain_error("limit_pairing: t must be positive");
    if (alpha_star.is_plus_infinity()) return 0.0;
    if (alpha_star.is_minus_infinity()) return inf;
    const double a = alpha_star.value();
    const double upper = std::min(f.support_max, std::max(26.0 * std::sqrt(t),
                                                          a < 0.0 ? 64.0 / (4.0 * pi * -a) : 0.0));
    if (!(upper > 0.0)) return 0.0;
    std::vector<double> breaks = f.breakpoints;
    auto geo = geometric_refinement(0.0, std::sqrt(t), 18);
    breaks.insert(breaks.end(), geo.begin(), geo.end());
    auto integrand = [&](double r) { return r * f(r) * kernel_bracket(a, t, r, cfg); };
    const auto integral = integrate(integrand, 0.0, upper, breaks, cfg);
    return 8.0 * pi * t * mu.reference_pairing() * integral.value;
}

TermBreakdown proof_regime_decomposition(double k, const LimitRegime& regime, double t,
                                         const AtomicMeasure& mu, const RadialTestFunction& f,
                                         const KernelEvalConfig& cfg) {
    const double lambda = regime.schedule(k);
    const double alpha_eff = std::sqrt(k) * lambda * regime.alpha;
    const double shrink = 1.0 / std::sqrt(k);
    TermBreakdown breakdown;
    for (const auto& atom : mu.atoms()) {
        const double rx = shrink * atom.location.norm();
        const auto flow = apply_semigroup_radial(alpha_eff, t, rx, f, cfg);
        breakdown.free_term += atom.weight * shrink * flow.free_part;
        breakdown.image_term += atom.weight * shrink * flow.image_part;
        breakdown.alpha_term += atom.weight * shrink * flow.alpha_part;
    }
    return breakdown;
}

const char* to_string(MassRegime regime) {
    switch (regime) {
        case MassRegime::DECAY:
            return "DECAY";
        case MassRegime::FINITE:
            return "FINITE";
        case MassRegime::BLOWUP:
            return "BLOWUP";
        case MassRegime::UNRESOLVED:
            return "UNRESOLVED";
    }
    return "?";
}

MassRegime classify_total_mass(const std::vector<std::pair<double, double>>& k_log_values,
                               double blowup_log_growth) {
    if (k_log_values.size() < 3) return MassRegime::UNRESOLVED;
    const auto& rows = k_log_values;
    const std::size_t n = rows.size();
    // growth over the trailing two decades of k
    const double k_last = rows[n - 1].first;
    double log_at_two_decades_back = rows[0].second;
    bool found = false;
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].first * 100.0 <= k_last * 1.0000001) {
            log_at_two_decades_back = rows[i].second;
            found = true;
        }
    }
    const double tail_growth = found ? rows[n - 1].second - log_at_two_decades_back : 0.0;
    // monotonicity of the tail (second half of the table)
    bool tail_increasing = true, tail_decreasing = true;
    for (std::size_t i = n / 2; i + 1 < n; ++i) {
        if (rows[i + 1].second < rows[i].second) tail_increasing = false;
        if (rows[i + 1].second > rows[i].second) tail_decreasing = false;
    }
    if (found && tail_growth >= blowup_log_growth) {
        return tail_increasing ? MassRegime::BLOWUP : MassRegime::UNRESOLVED;
    }
    const double last_step = rows[n - 1].second - rows[n - 2].second;
    if (tail_decreasing && last_step < std::log(0.9)) {
        // still shrinking by decades: heading to zero
        return MassRegime::DECAY;
    }
    if (std::abs(last_step) < std::log(1.05)) {
        return (tail_increasing || tail_decreasing) ? MassRegime::FINITE : MassRegime::UNRESOLVED;
    }
    return MassRegime::UNRESOLVED;
}

TotalMassReport total_mass_regimes(double alpha, double t, const AtomicMeasure& mu,
                                   const std::vector<double>& k_values,
                                   const TotalMassOptions& opts, const KernelEvalConfig& cfg) {
    if (!std::isfinite(alpha)) throw std::domain_error("total_mass_regimes: alpha must be finite");
    if (k_values.size() < 3) throw std::domain_error("total_mass_regimes: need >= 3 k values");
    if (opts.truncation_radii.size() < 2)
        throw std::domain_error("total_mass_regimes: need >= 2 truncation radii");
    TotalMassReport report;

    // log scaled total mass at one k for one truncation radius; proof-form
    // route (kernel k^{1/2} alpha at time t) keeps every piece conditioned.
    auto log_mass = [&](double k, double radius) {
        const double alpha_eff = std::sqrt(k) * alpha;
        const double shrink = 1.0 / std::sqrt(k);
        const auto f_r = constant_ball(1.0, radius * std::max(1.0, std::sqrt(t)),
                                       opts.mollifier_width * std::max(1.0, std::sqrt(t)));
        double acc = -inf;
        for (const auto& atom : mu.atoms()) {
            const double rx = shrink * atom.location.norm();
            const double lg = apply_semigroup_log(alpha_eff, t, rx, f_r, cfg);
            acc = log_sum_exp(acc, std::log(atom.weight * shrink) + lg);
        }
        return acc;
    };

    std::vector<std::pair<double, double>> k_log;
    for (double k : k_values) {
        // R-extrapolation: the truncation tail decays like a Gaussian, so the
        // largest two radii already bracket the limit; extrapolate linearly in
        // the last increment and record the residual as the truncation error.
        std::vector<double> per_radius;
        for (double radius : opts.truncation_radii) per_radius.push_back(log_mass(k, radius));
        const double last = per_radius.back();
        const double prev = per_radius[per_radius.size() - 2];
        const double extrapolated = last + (last - prev);  // in log space; increments are tiny
        k_log.emplace_back(k, extrapolated);
    }

    report.log_values.reserve(k_log.size());
    for (const auto& [k, lg] : k_log) report.log_values.push_back(lg);
    report.regime = classify_total_mass(k_log, opts.blowup_log_growth);

    // known limit for the table column
    if (alpha > 0.0) {
        report.limit_value = 0.0;
    } else if (alpha < 0.0) {
        report.limit_value = inf;
    } else {
        // 2t <mu, phi_ref> int |y|^-1 p_t(y) dy = 2 sqrt(t / pi) <mu, phi_ref>
        report.limit_value = 2.0 * std::sqrt(t / pi) * mu.reference_pairing();
    }

    for (const auto& [k, lg] : k_log) {
        ConvergenceRow row;
        row.k = k;
        row.scaled_mean = lg > log_double_max ? inf : std::exp(lg);
        row.limit_value = report.limit_value;
        row.abs_error = std::abs(row.scaled_mean - row.limit_value);
        row.rel_error = report.limit_value > 0.0 && std::isfinite(report.limit_value)
                            ? row.abs_error / report.limit_value
                            : std::numeric_limits<double>::quiet_NaN();
        report.table.append(row);
    }

    if (report.regime == MassRegime::FINITE) {
        // Richardson step in 1/sqrt(k): m(k) ~ L + c k^{-1/2}
        const auto& rows = report.table.rows;
        const double m2 = rows[rows.size() - 1].scaled_mean;
        const double m1 = rows[rows.size() - 2].scaled_mean;
        const double k2 = rows[rows.size() - 1].k;
        const double k1 = rows[rows.size() - 2].k;
        const double ratio = std::sqrt(k2 / k1);
        report.extrapolated_limit = m2 + (m2 - m1) / (ratio - 1.0);
        report.note = "limit extrapolated in k^{-1/2} from the two largest k";
    } else if (report.regime == MassRegime::BLOWUP) {
        report.extrapolated_limit = inf;
        report.note = "log growth over trailing two decades exceeds threshold";
    } else if (report.regime == MassRegime::DECAY) {
        report.extrapolated_limit = 0.0;
        report.note = "scaled mass still shrinking at the largest k";
    } else {
        report.note = "tail neither settles nor diverges monotonically; data retained";
    }
    return report;
}

}  // namespace pik
