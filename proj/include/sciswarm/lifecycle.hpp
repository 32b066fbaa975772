// Natural selection of labs: rank-quantile budget updates, pruning at
// budget zero, spawning at the budget cap, and the rotating explorer quota.
#pragma once

#include "sciswarm/registry.hpp"
#include "sciswarm/rng.hpp"
#include "sciswarm/types.hpp"

#include <cstddef>
#include <vector>

namespace sciswarm {

struct LifecycleParams {
    int initial_budget = 3;            // b_init
    int max_budget = 6;                // b_max
    double selection_fraction = 0.25;  // q, in (0, 0.5]
    std::size_t population_cap = 64;   // N_max
    std::size_t initial_population = 20;
    double explorer_fraction = 0.1;    // rho, in [0, 1)
    double spawn_scale = 0.0;          // resolved to 0.05 * (hi - lo) at config load
};

// ranking holds living lab ids ordered best to worst (a strict total order,
// ties already broken toward lower ids). The top floor(q*N) labs gain one
// budget point (capped at max_budget) and the bottom floor(q*N) lose one
// (floored at zero); q <= 0.5 keeps the two slices disjoint.
void update_budgets(Registry& registry, const std::vector<LabId>& ranking,
                    const LifecycleParams& params);

struct SpawnRecord {
    LabId parent = 0;
    LabId child = 0;
    Position position;
};

struct LifecycleOutcome {
    std::vector<LabId> pruned;
    std::vector<SpawnRecord> spawned;
    std::vector<LabId> explorers;
    bool extinct = false;
};

// Barrier-order lifecycle pass over already-updated budgets:
//   1. every lab at budget 0 is removed (record marked dead);
//   2. in ascending id order, every lab at max_budget spawns one child next
//      to itself (Gaussian spawn_scale jitter, clamped), with fresh id,
//      initial budget, zero velocity and trust; the parent's budget resets
//      to initial_budget; spawning stops at the population cap;
//   3. explorer flags are reassigned by rotation.
// An empty swarm after pruning reports extinct instead of throwing.
LifecycleOutcome prune_and_spawn(Registry& registry, const LifecycleParams& params,
                                 int iteration, RngStream& lifecycle_stream);

// Flags the floor(rho*N) living labs minimizing (lab_id + t) mod N, ties to
// the lower id; clears all other flags. Returns the flagged ids.
std::vector<LabId> assign_explorer_flags(Registry& registry, double explorer_fraction,
                                         int iteration);

} // namespace sciswarm
