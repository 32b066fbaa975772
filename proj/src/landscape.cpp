#include "sciswarm/landscape.hpp"

#include "sciswarm/errors.hpp"

#include <cmath>
#include <numbers>

namespace sciswarm {

namespace {

double squared_distance_to(const Position& x, double first_coord) {
    // Distance to the point (first_coord, 0, ..., 0).
    double total = (x[0] - first_coord) * (x[0] - first_coord);
    for (std::size_t j = 1; j < x.size(); ++j) {
        total += x[j] * x[j];
    }
    return total;
}

} // namespace

Landscape Landscape::make(const std::string& name, int dimension) {
    if (dimension < 1) {
        throw UnknownLandscape("dimension must be >= 1");
    }
    Landscape ls;
    ls.name_ = name;
    ls.dimension_ = dimension;
    const double d = static_cast<double>(dimension);
    if (name == "sphere") {
        ls.kind_ = Kind::sphere;
        ls.bounds_ = {-5.12, 5.12};
        ls.objective_count_ = 1;
        ls.optimum_ = ObjectiveVector{0.0};
        ls.ceiling_ = {d * 5.12 * 5.12};
    } else if (name == "rastrigin") {
        ls.kind_ = Kind::rastrigin;
        ls.bounds_ = {-5.12, 5.12};
        ls.objective_count_ = 1;
        ls.optimum_ = ObjectiveVector{0.0};
        ls.ceiling_ = {10.0 * d + d * (5.12 * 5.12 + 10.0)};
    } else if (name == "two_wells") {
        ls.kind_ = Kind::two_wells;
        ls.bounds_ = {-3.0, 3.0};
        ls.objective_count_ = 2;
        // The ideal point; unattainable, used for diagnostics only.
        ls.optimum_ = ObjectiveVector{0.0, 0.0};
        const double worst = (3.0 + 1.0) * (3.0 + 1.0) + 3.0 * 3.0 * (d - 1.0);
        ls.ceiling_ = {worst, worst};
    } else {
        throw UnknownLandscape("unknown landscape '" + name + "'");
    }
    return ls;
}

ObjectiveVector Landscape::evaluate(const Position& position) const {
    if (static_cast<int>(position.size()) != dimension_) {
        throw DimensionMismatch("position has dimension " +
                                std::to_string(position.size()) + ", expected " +
                                std::to_string(dimension_));
    }
    for (double x : position) {
        if (!bounds_.contains(x)) {
            throw OutOfBounds("coordinate " + std::to_string(x) + " outside [" +
                              std::to_string(bounds_.lo) + ", " + std::to_string(bounds_.hi) +
                              "]");
        }
    }
    switch (kind_) {
    case Kind::sphere: {
        double total = 0.0;
        for (double x : position) {
            total += x * x;
        }
        return {total};
    }
    case Kind::rastrigin: {
        double total = 10.0 * static_cast<double>(dimension_);
        for (double x : position) {
            total += x * x - 10.0 * std::cos(2.0 * std::numbers::pi * x);
        }
        return {total};
    }
    case Kind::two_wells:
        return {squared_distance_to(position, -1.0), squared_distance_to(position, 1.0)};
    }
    throw UnknownLandscape("corrupt landscape kind");
}

double Landscape::reference_error(const ObjectiveVector& objectives) const {
    if (!optimum_.has_value()) {
        throw NoReference("landscape '" + name_ + "' is configured reference-free");
    }
    if (objectives.size() != optimum_->size()) {
        throw DimensionMismatch("objective vector has " + std::to_string(objectives.size()) +
                                " components, expected " + std::to_string(optimum_->size()));
    }
    double total = 0.0;
    for (std::size_t m = 0; m < objectives.size(); ++m) {
        const double d = objectives[m] - (*optimum_)[m];
        total += d * d;
    }
    return std::sqrt(total);
}

const ObjectiveVector& Landscape::optimum() const {
    if (!optimum_.has_value()) {
        throw NoReference("landscape '" + name_ + "' is configured reference-free");
    }
    return *optimum_;
}

} // namespace sciswarm
