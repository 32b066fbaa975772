// Synthetic objective landscapes. Each landscape defines the hidden
// ground-truth quality of a claim; evaluation is pure and side-effect free.
#pragma once

#include "sciswarm/types.hpp"

#include <optional>
#include <string>

namespace sciswarm {

class Landscape {
public:
    // Catalog: "sphere" (unimodal, M=1), "rastrigin" (multimodal, M=1),
    // "two_wells" (bi-objective, two separated optima). Throws
    // UnknownLandscape for other names.
    static Landscape make(const std::string& name, int dimension);

    ObjectiveVector evaluate(const Position& position) const;

    // Euclidean distance between an objective vector and the known optimum.
    // Throws NoReference when the landscape is configured reference-free.
    double reference_error(const ObjectiveVector& objectives) const;

    const std::string& name() const { return name_; }
    int dimension() const { return dimension_; }
    int objective_count() const { return objective_count_; }
    const Bounds& bounds() const { return bounds_; }
    bool has_reference() const { return optimum_.has_value(); }
    const ObjectiveVector& optimum() const;

    // Componentwise supremum of the objectives over the bounding box;
    // fixed reference point for hypervolume accounting.
    const ObjectiveVector& objective_ceiling() const { return ceiling_; }

    // Strips the optimum so reference_error raises NoReference
    // (votes-only experiments operate without a published reference).
    void drop_reference() { optimum_.reset(); }

private:
    enum class Kind { sphere, rastrigin, two_wells };

    Landscape() = default;

    Kind kind_ = Kind::sphere;
    std::string name_;
    int dimension_ = 1;
    int objective_count_ = 1;
    Bounds bounds_;
    std::optional<ObjectiveVector> optimum_;
    ObjectiveVector ceiling_;
};

} // namespace sciswarm
