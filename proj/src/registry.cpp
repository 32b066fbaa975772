#include "sciswarm/registry.hpp"

#include "sciswarm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sciswarm {

Registry::Registry(Bounds bounds, int dimension, std::size_t population_cap)
    : bounds_(bounds), dimension_(dimension), population_cap_(population_cap) {}

LabId Registry::register_lab(const Position& initial_position, int initial_budget) {
    if (labs_.size() + 1 > population_cap_) {
        throw CapExceeded("population cap " + std::to_string(population_cap_) + " exceeded");
    }
    if (static_cast<int>(initial_position.size()) != dimension_) {
        throw OutOfBounds("initial position has dimension " +
                          std::to_string(initial_position.size()) + ", expected " +
                          std::to_string(dimension_));
    }
    for (double x : initial_position) {
        if (!bounds_.contains(x)) {
            throw OutOfBounds("initial position coordinate " + std::to_string(x) +
                              " outside [" + std::to_string(bounds_.lo) + ", " +
                              std::to_string(bounds_.hi) + "]");
        }
    }

    const LabId id = next_id_++;
    LabState lab;
    lab.lab_id = id;
    lab.position = initial_position;
    lab.velocity.assign(initial_position.size(), 0.0);
    lab.personal_best = initial_position;
    lab.budget = initial_budget;
    labs_.push_back(std::move(lab));

    RegistryRecord record;
    record.lab_id = id;
    record.claim = initial_position;
    records_.emplace(id, std::move(record));
    return id;
}

void Registry::record_claim(LabId id, const Position& claim, EvidenceEntry entry) {
    auto it = records_.find(id);
    if (it == records_.end() || !it->second.alive) {
        throw UnknownLab("no living lab with id " + std::to_string(id));
    }
    it->second.claim = claim;
    it->second.evidence.push_back(std::move(entry));
}

void Registry::mark_dead(LabId id) {
    auto it = records_.find(id);
    if (it == records_.end() || !it->second.alive) {
        throw UnknownLab("no living lab with id " + std::to_string(id));
    }
    it->second.alive = false;
    auto lab_it = std::find_if(labs_.begin(), labs_.end(),
                               [id](const LabState& l) { return l.lab_id == id; });
    if (lab_it != labs_.end()) {
        labs_.erase(lab_it);
    }
}

LabState& Registry::lab(LabId id) {
    auto it = std::find_if(labs_.begin(), labs_.end(),
                           [id](const LabState& l) { return l.lab_id == id; });
    if (it == labs_.end()) {
        throw UnknownLab("no living lab with id " + std::to_string(id));
    }
    return *it;
}

const LabState& Registry::lab(LabId id) const {
    return const_cast<Registry*>(this)->lab(id);
}

void Registry::sync_trust() {
    for (const LabState& lab : labs_) {
        records_.at(lab.lab_id).trust = lab.trust;
    }
}

bool Registry::trust_consistent() const {
    for (const LabState& lab : labs_) {
        if (records_.at(lab.lab_id).trust != lab.trust) {
            return false;
        }
    }
    return true;
}

double position_variance(std::span<const Position> positions) {
    if (positions.empty()) {
        throw EmptySwarm("variance of an empty swarm");
    }
    const std::size_t dim = positions.front().size();
    Vec centroid(dim, 0.0);
    for (const Position& p : positions) {
        for (std::size_t j = 0; j < dim; ++j) {
            centroid[j] += p[j];
        }
    }
    for (double& c : centroid) {
        c /= static_cast<double>(positions.size());
    }
    double total = 0.0;
    for (const Position& p : positions) {
        for (std::size_t j = 0; j < dim; ++j) {
            const double d = p[j] - centroid[j];
            total += d * d;
        }
    }
    return total / static_cast<double>(positions.size());
}

double position_variance(const std::vector<LabState>& labs) {
    std::vector<Position> positions;
    positions.reserve(labs.size());
    for (const LabState& lab : labs) {
        positions.push_back(lab.position);
    }
    return position_variance(std::span<const Position>(positions));
}

double trust_concentration(const std::vector<LabState>& labs) {
    if (labs.empty()) {
        throw EmptySwarm("trust concentration of an empty swarm");
    }
    double total = 0.0;
    double max_trust = 0.0;
    for (const LabState& lab : labs) {
        total += lab.trust;
        max_trust = std::max(max_trust, lab.trust);
    }
    if (total <= 0.0) {
        return 1.0 / static_cast<double>(labs.size());
    }
    return max_trust / total;
}

CollectiveState collective_state(const Registry& registry, int iteration,
                                 double initial_variance) {
    if (registry.labs().empty()) {
        throw EmptySwarm("collective state of an empty swarm");
    }
    CollectiveState state;
    state.iteration = iteration;
    state.position_variance = position_variance(registry.labs());
    state.initial_variance = initial_variance;
    state.trust_concentration = trust_concentration(registry.labs());
    state.population = static_cast<int>(registry.population());
    return state;
}

} // namespace sciswarm
