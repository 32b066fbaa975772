#include "sciswarm/lifecycle.hpp"

#include <algorithm>
#include <cmath>

namespace sciswarm {

void update_budgets(Registry& registry, const std::vector<LabId>& ranking,
                    const LifecycleParams& params) {
    const std::size_t n = ranking.size();
    const auto slice = static_cast<std::size_t>(
        std::floor(params.selection_fraction * static_cast<double>(n)));
    if (slice == 0) {
        return;
    }
    for (std::size_t i = 0; i < slice; ++i) {
        LabState& winner = registry.lab(ranking[i]);
        winner.budget = std::min(winner.budget + 1, params.max_budget);
        LabState& loser = registry.lab(ranking[n - 1 - i]);
        loser.budget = std::max(loser.budget - 1, 0);
    }
}

LifecycleOutcome prune_and_spawn(Registry& registry, const LifecycleParams& params,
                                 int iteration, RngStream& lifecycle_stream) {
    LifecycleOutcome outcome;

    for (const LabState& lab : registry.labs()) {
        if (lab.budget <= 0) {
            outcome.pruned.push_back(lab.lab_id);
        }
    }
    for (LabId id : outcome.pruned) {
        registry.mark_dead(id);
    }
    if (registry.population() == 0) {
        outcome.extinct = true;
        return outcome;
    }

    // Snapshot the spawner list first; children never spawn in the same pass.
    std::vector<LabId> at_cap;
    for (const LabState& lab : registry.labs()) {
        if (lab.budget >= params.max_budget) {
            at_cap.push_back(lab.lab_id);
        }
    }
    const Bounds& bounds = registry.bounds();
    for (LabId parent_id : at_cap) {
        if (registry.population() >= params.population_cap) {
            break;
        }
        Position child_pos(registry.dimension());
        {
            const Position& parent_pos = registry.lab(parent_id).position;
            for (std::size_t j = 0; j < child_pos.size(); ++j) {
                const double delta = params.spawn_scale > 0.0
                                         ? lifecycle_stream.next_gaussian(0.0, params.spawn_scale)
                                         : 0.0;
                child_pos[j] = std::clamp(parent_pos[j] + delta, bounds.lo, bounds.hi);
            }
        }
        const LabId child_id = registry.register_lab(child_pos, params.initial_budget);
        registry.lab(parent_id).budget = params.initial_budget;
        outcome.spawned.push_back(SpawnRecord{parent_id, child_id, std::move(child_pos)});
    }

    outcome.explorers = assign_explorer_flags(registry, params.explorer_fraction, iteration);
    return outcome;
}

std::vector<LabId> assign_explorer_flags(Registry& registry, double explorer_fraction,
                                         int iteration) {
    std::vector<LabState>& labs = registry.labs();
    const std::size_t n = labs.size();
    for (LabState& lab : labs) {
        lab.explorer_flag = false;
    }
    const auto quota = static_cast<std::size_t>(
        std::floor(explorer_fraction * static_cast<double>(n)));
    if (quota == 0 || n == 0) {
        return {};
    }
    // Rotating duty: smallest (id + t) mod N values take the flag.
    std::vector<std::pair<std::uint64_t, LabId>> keyed;
    keyed.reserve(n);
    for (const LabState& lab : labs) {
        keyed.emplace_back((lab.lab_id + static_cast<std::uint64_t>(iteration)) % n, lab.lab_id);
    }
    std::sort(keyed.begin(), keyed.end());
    std::vector<LabId> flagged;
    flagged.reserve(quota);
    for (std::size_t i = 0; i < quota; ++i) {
        registry.lab(keyed[i].second).explorer_flag = true;
        flagged.push_back(keyed[i].second);
    }
    std::sort(flagged.begin(), flagged.end());
    return flagged;
}

} // namespace sciswarm
