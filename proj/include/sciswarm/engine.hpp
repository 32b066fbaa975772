// The swarm update: three-factor velocity rule, absorbing-wall position
// update, coefficient decoding from the collective state, and the
// non-dominated archive that replaces the single swarm best in
// multi-objective runs.
#pragma once

#include "sciswarm/review.hpp"
#include "sciswarm/rng.hpp"
#include "sciswarm/types.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace sciswarm {

struct SwarmParams {
    double inertia_min = 0.4;
    double inertia_max = 0.9;
    double coeff_min = 0.5;
    double coeff_max = 2.5;
    double v_max = 0.0;         // resolved to 0.5 * (hi - lo) at config load
    double epsilon_start = 0.5;
    double epsilon_end = 0.05;
    double explore_scale = 0.0; // resolved to 0.1 * (hi - lo) at config load
    std::size_t archive_capacity = 50;
};

struct Coefficients {
    double inertia = 0.0;   // w
    double cognitive = 0.0; // c1, pull toward the personal best
    double social = 0.0;    // c2, pull toward the swarm best
};

// Consensus kappa = 1 - min(1, variance_t / initial_variance) maps
// disagreement to a strong cognitive pull and consensus to a strong social
// pull; inertia decays linearly over the horizon. A degenerate
// initial_variance (single lab swarm) counts as full consensus.
Coefficients decode_coefficients(const CollectiveState& collective, const SwarmParams& params,
                                 int t, int horizon);

// Linear schedule from epsilon_start at t=0 to epsilon_end at t=horizon.
double exploration_rate(const SwarmParams& params, int t, int horizon);

// Deterministic core of the velocity rule, with the per-coordinate uniform
// draws supplied by the caller:
//   v'_j = w*v_j + c1*r1_j*(p_j - x_j) + c2*r2_j*(g_j - x_j)
// followed by a componentwise clamp to [-v_max, v_max].
Velocity velocity_update_with_draws(const LabState& lab, const Position& global_best,
                                    const Coefficients& coeffs, double v_max,
                                    std::span<const double> r_personal,
                                    std::span<const double> r_social);

// Production path: r1_j then r2_j drawn per coordinate from the lab's stream.
Velocity velocity_update(const LabState& lab, const Position& global_best,
                         const Coefficients& coeffs, double v_max, RngStream& stream);

// x'_j = clamp(x_j + v_j, lo, hi); a clamped coordinate zeroes the matching
// velocity component (absorbing walls).
Position position_update(const Position& position, Velocity& velocity, const Bounds& bounds);

// Gaussian perturbation with standard deviation explore_scale per
// coordinate, clamped to bounds. The caller resets the lab's velocity.
Position explore_move(const Position& position, double explore_scale, const Bounds& bounds,
                      RngStream& stream);

// The community's best-known claim for scalar fitness modes.
struct BestRecord {
    Position position;
    double quality = kNoQuality;
    LabId lab_id = 0;
    int iteration = 0;

    bool valid() const { return !position.empty(); }
};

// Strict-improvement updates; exact ties keep the incumbent, and the caller
// processes labs in ascending id order so ties resolve to the lower id.
bool update_personal_best(LabState& lab, const Position& claim, double quality);
bool update_swarm_best(BestRecord& best, const Position& claim, double quality, LabId lab_id,
                       int iteration);

// Multi-objective personal best: replaced only when the new objective
// vector Pareto-dominates the stored one (first scored claim always sticks).
bool update_personal_best_pareto(LabState& lab, const Position& claim,
                                 const ObjectiveVector& objectives);

struct ArchiveEntry {
    Position position;
    ObjectiveVector objectives;
    LabId lab_id = 0;
    int iteration = 0;
};

// Elitist non-dominated archive. Candidates dominated by (or duplicating)
// a member are rejected; accepted candidates evict every member they
// dominate. Over capacity, the entry with the smallest exclusive
// hypervolume contribution is dropped (two objectives; crowding distance
// otherwise), which keeps the archive hypervolume non-decreasing.
class ParetoArchive {
public:
    ParetoArchive() = default;
    ParetoArchive(std::size_t capacity, ObjectiveVector reference_point);

    bool insert(const Position& position, const ObjectiveVector& objectives, LabId lab_id,
                int iteration);

    const std::vector<ArchiveEntry>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }
    std::size_t capacity() const { return capacity_; }
    const ObjectiveVector& reference_point() const { return reference_; }

    // Uniform draw; the per-iteration social pull target. Throws EmptySwarm.
    const ArchiveEntry& sample(RngStream& stream) const;

    // Area dominated by the archive front, bounded by the reference point.
    double hypervolume() const;

private:
    void prune_one();

    std::size_t capacity_ = 50;
    ObjectiveVector reference_;
    std::vector<ArchiveEntry> entries_;
};

} // namespace sciswarm
