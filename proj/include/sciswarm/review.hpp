// The citation-analogous voting system: a shared pool of anonymous
// reviewers scores every living lab each iteration, approval-votes its
// top picks, and the resulting tallies accumulate into decayed trust.
// Also home to the Pareto dominance primitives used by multi-objective
// fitness.
#pragma once

#include "sciswarm/rng.hpp"
#include "sciswarm/types.hpp"

#include <optional>
#include <span>
#include <vector>

namespace sciswarm {

// Reviewer pool and trust parameters, all config-driven.
struct ReviewParams {
    int reviewers = 20;           // R
    int votes_per_reviewer = 2;   // V
    double beta = 0.0;            // conformity bias in [0,1]; 1 = pure groupthink
    double noise = 0.05;          // perception noise amplitude (uniform +-)
    double trust_decay = 0.9;     // lambda; 1 = cumulative votes, 0 = per-iteration
    double dominance_cap = 0.5;   // gamma, max allowed trust share
    bool cap_enabled = false;
};

struct VoteTally {
    int iteration = 0;
    // Votes per living lab, ascending id; zero-vote labs included.
    std::vector<std::pair<LabId, int>> votes;
    int total = 0;
};

// Per-reviewer audit trail, for self-vote-ban verification.
struct VoteAudit {
    std::vector<LabId> employer;               // reviewer index -> employing lab
    std::vector<std::vector<LabId>> approved;  // reviewer index -> voted labs
};

// Min-max normalization to [0,1], higher is better; all-equal inputs map
// to 0.5 for every lab.
std::vector<double> normalize_qualities(std::span<const double> raw);

// Scalar perceived-quality base for reviewers, computed from raw objective
// vectors without consulting any reference optimum: each objective is
// min-max normalized across labs, components are averaged, and the result
// is normalized again. For single-objective landscapes this has exactly the
// ranks of the (hidden) reference error.
std::vector<double> reviewer_base_quality(const std::vector<ObjectiveVector>& objectives);

// Each reviewer perceives s_i = (1-beta)*q_i + beta*popularity_i + noise,
// then approves its top-V distinct labs, excluding the lab that employs it
// (round-robin assignment over living labs: reviewer r works for
// living[r mod N]). Ties break toward lower ids. Fewer than V eligible labs
// means the reviewer votes only the eligible ones. Noise is drawn per
// reviewer x lab from the reviewer's own stream, labs in ascending id order.
// Throws EmptySwarm.
VoteTally cast_votes(const ReviewParams& params, const std::vector<LabId>& living,
                     const std::vector<double>& qualities, const std::vector<double>& trust,
                     std::vector<RngStream>& reviewer_streams, int iteration,
                     VoteAudit* audit = nullptr);

// trust_i <- lambda * trust_i + votes_i for every living lab, then the
// dominance cap when enabled and feasible (N >= 2 and gamma > 1/N).
// `trust` is aligned with `tally.votes`.
void settle_trust(std::vector<double>& trust, const VoteTally& tally,
                  const ReviewParams& params);

// Redistributes any share above gamma to the labs still below the cap,
// proportionally to their pre-cap trust (uniformly when those are all
// zero), until every share is <= gamma + 1e-9. Total trust is preserved.
// No-op for a single lab; throws InvalidCap when gamma <= 1/N for N >= 2.
void apply_dominance_cap(std::vector<double>& trust, double gamma);

// votes_i / total, or all zeros when no votes were cast.
std::vector<double> vote_shares(const VoteTally& tally);

// Pareto dominance under minimization: a dominates b iff a <= b
// componentwise with at least one strict inequality.
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b);

// Indices of the mutually non-dominated vectors.
std::vector<std::size_t> non_dominated(const std::vector<ObjectiveVector>& vectors);

// Front index per vector: 0 for the non-dominated set, 1 after removing
// front 0, and so on.
std::vector<int> pareto_ranks(const std::vector<ObjectiveVector>& vectors);

// Crowding distance within one mutually non-dominated front; boundary
// points get +infinity.
std::vector<double> crowding_distances(const std::vector<ObjectiveVector>& front);

// Multi-objective fitness key: lower rank first, then higher crowding.
struct MoKey {
    int rank = 0;
    double crowding = 0.0;

    // True when this key is strictly better than `other`.
    bool better_than(const MoKey& other) const {
        if (rank != other.rank) return rank < other.rank;
        return crowding > other.crowding;
    }
};
std::vector<MoKey> mo_fitness_keys(const std::vector<ObjectiveVector>& objectives);

} // namespace sciswarm
