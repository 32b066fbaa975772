// The pluggable lab-behavior seam. A behavior is a pure decision procedure
// over (own state, immutable swarm snapshot, dedicated rng stream); the
// default behavior reproduces the engine's explore-or-PSO step exactly, and
// alternative decision procedures (including externally driven ones) can be
// registered under new names without touching the iteration loop.
#pragma once

#include "sciswarm/engine.hpp"
#include "sciswarm/types.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace sciswarm {

enum class FitnessMode { reference, votes, multi_objective };

// Everything a lab may read when deciding its move. Snapshots are immutable
// for the whole iteration; behaviors have no other channel to the swarm.
struct SwarmSnapshot {
    int iteration = 0;
    Coefficients coefficients;
    double epsilon = 0.0;
    Bounds bounds;
    const SwarmParams* params = nullptr;
    FitnessMode mode = FitnessMode::reference;
    const BestRecord* global_best = nullptr; // scalar fitness modes
    const ParetoArchive* archive = nullptr;  // multi-objective mode
};

struct Action {
    enum class Kind { pso_move, explore_move, hold };

    Kind kind = Kind::hold;
    Position position;
    Velocity velocity;
    bool forced_explore = false; // quota duty rather than the epsilon draw
};

using BehaviorFn = std::function<Action(const LabState&, const SwarmSnapshot&, RngStream&)>;

// Explorer-flagged labs always explore; everyone else draws u ~ U[0,1) and
// explores when u < epsilon, otherwise performs the PSO move (sampling the
// archive for its social target in multi-objective mode). Explore moves
// carry a zero velocity.
Action default_behavior(const LabState& lab, const SwarmSnapshot& snapshot, RngStream& stream);

class BehaviorCatalog {
public:
    // Catalog containing the built-in "default" behavior.
    static BehaviorCatalog with_defaults();

    // Throws DuplicateName when the name is taken.
    void register_behavior(const std::string& name, BehaviorFn behavior);

    // nullptr when the name is unknown.
    const BehaviorFn* find(const std::string& name) const;

    std::vector<std::string> names() const;

private:
    std::map<std::string, BehaviorFn> behaviors_;
};

} // namespace sciswarm
