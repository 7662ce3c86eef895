#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "pik/measure.hpp"
#include "pik/quadrature.hpp"
#include "pik/radial_profile.hpp"
#include "pik/space.hpp"

namespace pik {

/// Schedule k -> lambda_k of kernel-parameter rescalings.
class LambdaSchedule {
public:
    static LambdaSchedule constant(double value = 1.0);
    static LambdaSchedule inverse_sqrt();
    static LambdaSchedule table(std::vector<std::pair<double, double>> entries);
    static LambdaSchedule from_json(const nlohmann::json& spec);

    double operator()(double k) const;
    std::string describe() const;

private:
    enum class Type { constant_value, inverse_sqrt, table_lookup };
    Type type_ = Type::constant_value;
    double value_ = 1.0;
    std::vector<std::pair<double, double>> table_;
};

/// A large-scale regime: alpha, the schedule, and the resolved limit
/// alpha* = lim k^(1/2) lambda_k alpha. Construction checks numerically that
/// k^(1/2) lambda_k alpha actually settles toward alpha* over the k range.
struct LimitRegime {
    double alpha = 0.0;
    LambdaSchedule schedule;
    ExtendedAlpha alpha_star{0.0};

    static LimitRegime resolve(double alpha, const LambdaSchedule& schedule,
                               const std::vector<double>& k_range);
};

struct ConvergenceRow {
    double k = 0.0;
    double scaled_mean = 0.0;
    double limit_value = 0.0;
    double abs_error = 0.0;
    double rel_error = 0.0;
};

struct ConvergenceTable {
    std::vector<ConvergenceRow> rows;
    void append(ConvergenceRow row);  // enforces strictly increasing k
    void write_csv(std::ostream& out) const;
};

/// Limit kernel of the expected-measure theorem:
///   theta_t^alpha(x, y) = (2t / |x||y|) [p_t(|y|) - 4 pi alpha I(alpha, t, |y|)]
/// for finite alpha; extended to 0 at alpha = +inf and to the +inf marker at
/// alpha = -inf.
double limit_kernel(const ExtendedAlpha& alpha_star, double t, const SpacePoint& x,
                    const SpacePoint& y, const KernelEvalConfig& cfg = {});

/// k^(-1/2) E_mu <X_{kt}^{lambda_k alpha}, f(k^(-1/2) .)>, evaluated both
/// directly (flow at time kt) and in the proof form (kernel parameter
/// k^(1/2) lambda_k alpha at time t, source shrunk by k^(-1/2)); the two
/// routes must agree to quadrature tolerance or an internal-consistency error
/// is raised. Returns the direct route.
double scaled_mean(double k, const LimitRegime& regime, double t, const AtomicMeasure& mu,
                   const RadialTestFunction& f, const KernelEvalConfig& cfg = {});

/// <mu, integral theta_t^{alpha*}(., y) f(|y|) dy>
///   = 8 pi t <mu, phi_ref> int_0^inf r [p_t(r) - 4 pi alpha* I(alpha*, t, r)] f(r) dr.
/// Returns 0 at alpha* = +inf and the +inf marker at alpha* = -inf.
double limit_pairing(const ExtendedAlpha& alpha_star, double t, const AtomicMeasure& mu,
                     const RadialTestFunction& f, const KernelEvalConfig& cfg = {});

/// The three summands of the proof decomposition at scale k (free term,
/// image term, signed alpha term); their sum is the scaled mean.
struct TermBreakdown {
    double free_term = 0.0;
    double image_term = 0.0;
    double alpha_term = 0.0;  // signed
    double total() const { return free_term + image_term + alpha_term; }
};
TermBreakdown proof_regime_decomposition(double k, const LimitRegime& regime, double t,
                                         const AtomicMeasure& mu, const RadialTestFunction& f,
                                         const KernelEvalConfig& cfg = {});

enum class MassRegime { DECAY, FINITE, BLOWUP, UNRESOLVED };
const char* to_string(MassRegime regime);

struct TotalMassReport {
    ConvergenceTable table;           // scaled total mass per k (inf rows for blowup scale)
    std::vector<double> log_values;   // log of the scaled total mass per k
    MassRegime regime = MassRegime::UNRESOLVED;
    double extrapolated_limit = 0.0;  // meaningful for FINITE
    double limit_value = 0.0;         // known limit: 0 (decay), finite formula, inf (blowup)
    std::string note;
};

struct TotalMassOptions {
    std::vector<double> truncation_radii = {12.0, 18.0, 24.0};  // f_R ladder
    double mollifier_width = 1.0;
    double blowup_log_growth = std::log(1e3);  // over two decades of k
};

/// Remark-level study with lambda_k = 1 and f = 1 (approximated by the
/// truncation family f_R with extrapolation in R). Scaled total masses are
/// computed in log space so the blowup regime stays representable.
TotalMassReport total_mass_regimes(double alpha, double t, const AtomicMeasure& mu,
                                   const std::vector<double>& k_values,
                                   const TotalMassOptions& opts = {},
                                   const KernelEvalConfig& cfg = {});

/// Classification rule on (k, log scaled mass) pairs; exposed so the decision
/// logic is testable on synthetic tables.
MassRegime classify_total_mass(const std::vector<std::pair<double, double>>& k_log_values,
                               double blowup_log_growth);

}  // namespace pik
