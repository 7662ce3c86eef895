#pragma once

#include <vector>

#include <json.hpp>

#include "pik/radial_profile.hpp"
#include "pik/space.hpp"

namespace pik {

/// Finite atomic measure on punctured space: a weighted sum of point masses.
/// Every admissible measure pairs finitely with the reference weight.
class AtomicMeasure {
public:
    struct Atom {
        SpacePoint location;
        double weight;
    };

    AtomicMeasure() = default;

    void add(const SpacePoint& location, double weight);

    const std::vector<Atom>& atoms() const noexcept { return atoms_; }
    std::size_t size() const noexcept { return atoms_.size(); }

    /// <mu, phi_ref> = sum w_i / |x_i|.
    double reference_pairing() const;

    double total_weight() const;

    static AtomicMeasure from_json(const nlohmann::json& spec);

private:
    std::vector<Atom> atoms_;
};

/// Unit point mass at x.
AtomicMeasure delta_measure(const SpacePoint& x);

}  // namespace pik
