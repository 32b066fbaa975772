// Emergent-behavior measurements over iteration snapshots: consensus,
// diversity, camp structure, vote-truth rank correlation, and the
// two-objective hypervolume progress measure.
#pragma once

#include "sciswarm/types.hpp"

#include <map>
#include <optional>
#include <span>
#include <vector>

namespace sciswarm {

// Mean squared distance to the centroid; identical to the registry's
// definition (delegates there). Throws EmptySwarm.
double consensus_variance(std::span<const Position> positions);

// Average Euclidean distance over unordered pairs; 0 for a single lab.
double mean_pairwise_distance(std::span<const Position> positions);

struct CampAssignment {
    int camp_count = 0;
    std::map<LabId, int> assignment;
};

// Single-linkage clustering: labs within link_threshold are connected and
// camps are connected components, indexed 0,1,... by the smallest lab id
// they contain. Empty input yields zero camps.
CampAssignment detect_camps(const std::vector<std::pair<LabId, Position>>& labs,
                            double link_threshold);

// Spearman's rho with average ranks for ties:
//   rho = 1 - 6 * sum(d^2) / (N (N^2 - 1)).
// Absent (nullopt) when N < 2 or either list is constant.
std::optional<double> rank_correlation(std::span<const double> a, std::span<const double> b);

// Area dominated by a mutually non-dominated 2-objective front and bounded
// by the reference point, via a sorted sweep. Throws Unsupported for other
// objective counts and BadReference when a point exceeds the reference.
// Dominated or duplicate inputs are filtered, so the result is always the
// area of the input's non-dominated subset.
double hypervolume_2d(const std::vector<ObjectiveVector>& front,
                      const ObjectiveVector& reference);

// One row of the per-iteration metrics stream.
struct IterationMetrics {
    int iteration = 0;
    int population = 0;
    double consensus_variance = 0.0;
    double mean_pairwise_distance = 0.0;
    int camp_count = 0;
    std::map<LabId, int> camp_assignment;
    std::optional<double> best_quality;
    std::optional<double> vote_truth_rho;
    std::optional<double> hypervolume;
    int births = 0;
    int deaths = 0;

    // Action counters for schedule audits (not serialized to the CSV).
    int pso_moves = 0;
    int free_explores = 0;   // epsilon-triggered
    int forced_explores = 0; // explorer-quota duty
};

} // namespace sciswarm
