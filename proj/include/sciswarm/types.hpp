// Shared domain types for the lab-swarm simulation.
#pragma once

#include <cstdint>
#include <limits>
#include <vector>

namespace sciswarm {

// Unique for the lifetime of a run; strictly increasing at creation and
// never reused after a lab is pruned.
using LabId = std::uint64_t;

using Vec = std::vector<double>;
using Position = Vec;
using Velocity = Vec;

// One entry of a lab's objective vector; lower is better in every component.
using ObjectiveVector = Vec;

// Uniform box bounds shared by every coordinate of the claim space.
struct Bounds {
    double lo = -1.0;
    double hi = 1.0;

    double range() const { return hi - lo; }
    bool contains(double x) const { return x >= lo && x <= hi; }
};

constexpr double kNoQuality = -std::numeric_limits<double>::infinity();

// One swarm particle: a complete virtual lab.
struct LabState {
    LabId lab_id = 0;
    Position position;
    Velocity velocity;

    // Best claim this lab has recorded for itself. quality is on the
    // current fitness scale (higher is better); kNoQuality means the lab
    // has not recorded a scored claim yet. pbest_objectives is kept for
    // Pareto comparison in multi-objective runs (empty = none yet).
    Position personal_best;
    double personal_best_quality = kNoQuality;
    ObjectiveVector personal_best_objectives;

    int budget = 0;          // compute credits; 0 means pruned at the next barrier
    double trust = 0.0;      // decayed cumulative votes
    bool explorer_flag = false;
};

// One observation attached to a lab's public record.
struct EvidenceEntry {
    int iteration = 0;
    Vec values;
};

// Public record of what a lab claims, its evidence, and its current trust.
// Records of pruned labs are retained read-only, marked dead.
struct RegistryRecord {
    LabId lab_id = 0;
    Position claim;
    std::vector<EvidenceEntry> evidence;
    double trust = 0.0;
    bool alive = true;
};

// Per-iteration aggregate the coefficient decoder reads.
struct CollectiveState {
    int iteration = 0;
    double position_variance = 0.0;   // mean squared distance to centroid
    double initial_variance = 0.0;    // value at t = 0
    double trust_concentration = 0.0; // max trust share, 1/N when total trust is 0
    int population = 0;
    Position global_best;
    double global_best_quality = kNoQuality;
};

} // namespace sciswarm
