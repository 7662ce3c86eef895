#include "pik/measure.hpp"

#include "pik/errors.hpp"

namespace pik {

void AtomicMeasure::add(const SpacePoint& location, double weight) {
    if (!(weight > 0.0)) throw std::domain_error("AtomicMeasure: weights must be strictly positive");
    atoms_.push_back({location, weight});
}

double AtomicMeasure::reference_pairing() const {
    double sum = 0.0;
    for (const auto& atom : atoms_) sum += atom.weight / atom.location.norm();
    return sum;
}

double AtomicMeasure::total_weight() const {
    double sum = 0.0;
    for (const auto& atom : atoms_) sum += atom.weight;
    return sum;
}

AtomicMeasure AtomicMeasure::from_json(const nlohmann::json& spec) {
    if (!spec.is_object() || !spec.contains("atoms") || !spec.at("atoms").is_array())
        throw config_error("measure: expected an object with an \"atoms\" array");
    AtomicMeasure mu;
    for (const auto& entry : spec.at("atoms")) {
        if (!entry.is_object() || !entry.contains("w"))
            throw config_error("measure: every atom needs a weight field \"w\"");
        const double w = entry.at("w").get<double>();
        if (entry.contains("x")) {
            const auto& x = entry.at("x");
            if (!x.is_array() || x.size() != 3)
                throw config_error("measure: atom field \"x\" must be a 3-vector");
            mu.add(SpacePoint(x[0].get<double>(), x[1].get<double>(), x[2].get<double>()), w);
        } else if (entry.contains("r")) {
            mu.add(SpacePoint::on_axis(entry.at("r").get<double>()), w);
        } else {
            throw config_error("measure: atom needs \"x\" (3-vector) or \"r\" (radius)");
        }
    }
    return mu;
}

AtomicMeasure delta_measure(const SpacePoint& x) {
    AtomicMeasure mu;
    mu.add(x, 1.0);
    return mu;
}

}  // namespace pik
