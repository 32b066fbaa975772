#include "sciswarm/engine.hpp"

#include "sciswarm/errors.hpp"
#include "sciswarm/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace sciswarm {

Coefficients decode_coefficients(const CollectiveState& collective, const SwarmParams& params,
                                 int t, int horizon) {
    if (collective.population < 1) {
        throw EmptySwarm("coefficient decoding over an empty swarm");
    }
    double kappa = 1.0;
    if (collective.initial_variance > 0.0) {
        kappa = 1.0 - std::min(1.0, collective.position_variance / collective.initial_variance);
    }
    const double spread = params.coeff_max - params.coeff_min;
    Coefficients coeffs;
    coeffs.cognitive = params.coeff_min + spread * (1.0 - kappa);
    coeffs.social = params.coeff_min + spread * kappa;
    coeffs.inertia = params.inertia_max - (params.inertia_max - params.inertia_min) *
                                              (static_cast<double>(t) / static_cast<double>(horizon));
    return coeffs;
}

double exploration_rate(const SwarmParams& params, int t, int horizon) {
    return params.epsilon_start + (params.epsilon_end - params.epsilon_start) *
                                      (static_cast<double>(t) / static_cast<double>(horizon));
}

Velocity velocity_update_with_draws(const LabState& lab, const Position& global_best,
                                    const Coefficients& coeffs, double v_max,
                                    std::span<const double> r_personal,
                                    std::span<const double> r_social) {
    const std::size_t dim = lab.position.size();
    if (lab.velocity.size() != dim || lab.personal_best.size() != dim ||
        global_best.size() != dim || r_personal.size() != dim || r_social.size() != dim) {
        throw DimensionMismatch("velocity update with inconsistent dimensions");
    }
    Velocity next(dim, 0.0);
    for (std::size_t j = 0; j < dim; ++j) {
        const double v = coeffs.inertia * lab.velocity[j] +
                         coeffs.cognitive * r_personal[j] * (lab.personal_best[j] - lab.position[j]) +
                         coeffs.social * r_social[j] * (global_best[j] - lab.position[j]);
        next[j] = std::clamp(v, -v_max, v_max);
    }
    return next;
}

Velocity velocity_update(const LabState& lab, const Position& global_best,
                         const Coefficients& coeffs, double v_max, RngStream& stream) {
    const std::size_t dim = lab.position.size();
    Vec r_personal(dim), r_social(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        r_personal[j] = stream.next_uniform();
        r_social[j] = stream.next_uniform();
    }
    return velocity_update_with_draws(lab, global_best, coeffs, v_max, r_personal, r_social);
}

Position position_update(const Position& position, Velocity& velocity, const Bounds& bounds) {
    if (position.size() != velocity.size()) {
        throw DimensionMismatch("position update with inconsistent dimensions");
    }
    Position next(position.size(), 0.0);
    for (std::size_t j = 0; j < position.size(); ++j) {
        const double raw = position[j] + velocity[j];
        next[j] = std::clamp(raw, bounds.lo, bounds.hi);
        if (next[j] != raw) {
            velocity[j] = 0.0;
        }
    }
    return next;
}

Position explore_move(const Position& position, double explore_scale, const Bounds& bounds,
                      RngStream& stream) {
    Position next(position.size(), 0.0);
    for (std::size_t j = 0; j < position.size(); ++j) {
        const double delta = explore_scale > 0.0 ? stream.next_gaussian(0.0, explore_scale) : 0.0;
        next[j] = std::clamp(position[j] + delta, bounds.lo, bounds.hi);
    }
    return next;
}

bool update_personal_best(LabState& lab, const Position& claim, double quality) {
    if (quality > lab.personal_best_quality) {
        lab.personal_best = claim;
        lab.personal_best_quality = quality;
        return true;
    }
    return false;
}

bool update_swarm_best(BestRecord& best, const Position& claim, double quality, LabId lab_id,
                       int iteration) {
    if (!best.valid() || quality > best.quality) {
        best.position = claim;
        best.quality = quality;
        best.lab_id = lab_id;
        best.iteration = iteration;
        return true;
    }
    return false;
}

bool update_personal_best_pareto(LabState& lab, const Position& claim,
                                 const ObjectiveVector& objectives) {
    if (lab.personal_best_objectives.empty() ||
        dominates(objectives, lab.personal_best_objectives)) {
        lab.personal_best = claim;
        lab.personal_best_objectives = objectives;
        return true;
    }
    return false;
}

ParetoArchive::ParetoArchive(std::size_t capacity, ObjectiveVector reference_point)
    : capacity_(capacity), reference_(std::move(reference_point)) {}

bool ParetoArchive::insert(const Position& position, const ObjectiveVector& objectives,
                           LabId lab_id, int iteration) {
    for (const ArchiveEntry& entry : entries_) {
        if (entry.objectives == objectives || dominates(entry.objectives, objectives)) {
            return false;
        }
    }
    std::erase_if(entries_, [&](const ArchiveEntry& entry) {
        return dominates(objectives, entry.objectives);
    });
    entries_.push_back(ArchiveEntry{position, objectives, lab_id, iteration});
    if (entries_.size() > capacity_) {
        prune_one();
    }
    return true;
}

const ArchiveEntry& ParetoArchive::sample(RngStream& stream) const {
    if (entries_.empty()) {
        throw EmptySwarm("sampling an empty archive");
    }
    const auto idx = static_cast<std::size_t>(stream.next_uniform() *
                                              static_cast<double>(entries_.size()));
    return entries_[std::min(idx, entries_.size() - 1)];
}

double ParetoArchive::hypervolume() const {
    std::vector<ObjectiveVector> front;
    front.reserve(entries_.size());
    for (const ArchiveEntry& entry : entries_) {
        front.push_back(entry.objectives);
    }
    return hypervolume_2d(front, reference_);
}

void ParetoArchive::prune_one() {
    const std::size_t n = entries_.size();
    std::size_t victim = 0;
    if (reference_.size() == 2) {
        // Exclusive hypervolume contribution per entry; dropping the
        // smallest one can never reduce the archive hypervolume below its
        // pre-insertion value.
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return entries_[a].objectives[0] < entries_[b].objectives[0];
        });
        double min_contribution = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            const auto& f = entries_[order[i]].objectives;
            const double next_f1 =
                (i + 1 < n) ? entries_[order[i + 1]].objectives[0] : reference_[0];
            const double prev_f2 =
                (i > 0) ? entries_[order[i - 1]].objectives[1] : reference_[1];
            const double contribution = (next_f1 - f[0]) * (prev_f2 - f[1]);
            if (contribution < min_contribution) {
                min_contribution = contribution;
                victim = order[i];
            }
        }
    } else {
        std::vector<ObjectiveVector> front;
        front.reserve(n);
        for (const ArchiveEntry& entry : entries_) {
            front.push_back(entry.objectives);
        }
        const std::vector<double> crowd = crowding_distances(front);
        victim = static_cast<std::size_t>(
            std::min_element(crowd.begin(), crowd.end()) - crowd.begin());
    }
    entries_.erase(entries_.begin() + static_cast<std::ptrdiff_t>(victim));
}

} // namespace sciswarm
