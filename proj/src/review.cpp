#include "sciswarm/review.hpp"

#include "sciswarm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace sciswarm {

std::vector<double> normalize_qualities(std::span<const double> raw) {
    std::vector<double> out(raw.size(), 0.5);
    if (raw.empty()) {
        return out;
    }
    const auto [lo_it, hi_it] = std::minmax_element(raw.begin(), raw.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    if (hi <= lo) {
        return out; // all equal
    }
    for (std::size_t i = 0; i < raw.size(); ++i) {
        out[i] = (raw[i] - lo) / (hi - lo);
    }
    return out;
}

std::vector<double> reviewer_base_quality(const std::vector<ObjectiveVector>& objectives) {
    if (objectives.empty()) {
        return {};
    }
    const std::size_t m = objectives.front().size();
    const std::size_t n = objectives.size();
    std::vector<double> raw(n, 0.0);
    for (std::size_t k = 0; k < m; ++k) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        for (const auto& f : objectives) {
            lo = std::min(lo, f[k]);
            hi = std::max(hi, f[k]);
        }
        for (std::size_t i = 0; i < n; ++i) {
            const double badness = hi > lo ? (objectives[i][k] - lo) / (hi - lo) : 0.5;
            raw[i] += (1.0 - badness) / static_cast<double>(m);
        }
    }
    return normalize_qualities(raw);
}

VoteTally cast_votes(const ReviewParams& params, const std::vector<LabId>& living,
                     const std::vector<double>& qualities, const std::vector<double>& trust,
                     std::vector<RngStream>& reviewer_streams, int iteration,
                     VoteAudit* audit) {
    if (living.empty()) {
        throw EmptySwarm("cast_votes over an empty swarm");
    }
    const std::size_t n = living.size();

    // Popularity: trust share, or perfect equality when nobody has trust yet.
    std::vector<double> popularity(n, 1.0 / static_cast<double>(n));
    const double trust_total = std::accumulate(trust.begin(), trust.end(), 0.0);
    if (trust_total > 0.0) {
        for (std::size_t i = 0; i < n; ++i) {
            popularity[i] = trust[i] / trust_total;
        }
    }

    VoteTally tally;
    tally.iteration = iteration;
    tally.votes.reserve(n);
    for (LabId id : living) {
        tally.votes.emplace_back(id, 0);
    }
    if (audit) {
        audit->employer.clear();
        audit->approved.clear();
    }

    std::vector<std::pair<double, std::size_t>> scored; // (-score, index) for stable sort
    scored.reserve(n);
    for (int r = 0; r < params.reviewers; ++r) {
        RngStream& stream = reviewer_streams[static_cast<std::size_t>(r)];
        const std::size_t employer_idx = static_cast<std::size_t>(r) % n;

        scored.clear();
        for (std::size_t i = 0; i < n; ++i) {
            const double noise = stream.next_uniform(-params.noise, params.noise);
            const double s =
                (1.0 - params.beta) * qualities[i] + params.beta * popularity[i] + noise;
            if (i != employer_idx) {
                scored.emplace_back(-s, i);
            }
        }
        // Descending score; equal scores fall back to the lower lab id.
        std::sort(scored.begin(), scored.end());

        const std::size_t picks = std::min<std::size_t>(
            static_cast<std::size_t>(params.votes_per_reviewer), scored.size());
        std::vector<LabId> approved;
        approved.reserve(picks);
        for (std::size_t k = 0; k < picks; ++k) {
            const std::size_t i = scored[k].second;
            tally.votes[i].second += 1;
            tally.total += 1;
            approved.push_back(living[i]);
        }
        if (audit) {
            audit->employer.push_back(living[employer_idx]);
            audit->approved.push_back(std::move(approved));
        }
    }
    return tally;
}

void settle_trust(std::vector<double>& trust, const VoteTally& tally,
                  const ReviewParams& params) {
    for (std::size_t i = 0; i < trust.size(); ++i) {
        trust[i] = params.trust_decay * trust[i] + static_cast<double>(tally.votes[i].second);
    }
    const std::size_t n = trust.size();
    // Cap is skipped when infeasible for the current population.
    if (params.cap_enabled && n >= 2 &&
        params.dominance_cap > 1.0 / static_cast<double>(n)) {
        apply_dominance_cap(trust, params.dominance_cap);
    }
}

void apply_dominance_cap(std::vector<double>& trust, double gamma) {
    const std::size_t n = trust.size();
    if (n <= 1) {
        return; // cap inapplicable to a single lab
    }
    if (gamma <= 1.0 / static_cast<double>(n)) {
        throw InvalidCap("dominance cap " + std::to_string(gamma) +
                         " is infeasible for population " + std::to_string(n));
    }
    const double total = std::accumulate(trust.begin(), trust.end(), 0.0);
    if (total <= 0.0) {
        return;
    }
    const double cap_value = gamma * total;

    // Each round pins every violator at the cap and hands the pooled excess
    // to the labs still below it, proportionally to their current trust.
    // Recipients pushed over the cap become next round's violators; at least
    // one lab is pinned per round, so n rounds suffice.
    for (std::size_t round = 0; round < n; ++round) {
        double excess = 0.0;
        for (double& t : trust) {
            if (t > cap_value) {
                excess += t - cap_value;
                t = cap_value;
            }
        }
        if (excess <= 0.0) {
            return;
        }
        std::vector<std::size_t> below;
        double below_total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (trust[i] < cap_value) {
                below.push_back(i);
                below_total += trust[i];
            }
        }
        if (below.empty()) {
            // Only reachable through rounding: everyone sits exactly at the
            // cap. Spread the residual evenly to keep the total intact.
            for (double& t : trust) {
                t += excess / static_cast<double>(n);
            }
            return;
        }
        if (below_total > 0.0) {
            for (std::size_t i : below) {
                trust[i] += excess * trust[i] / below_total;
            }
        } else {
            for (std::size_t i : below) {
                trust[i] += excess / static_cast<double>(below.size());
            }
        }
    }
}

std::vector<double> vote_shares(const VoteTally& tally) {
    std::vector<double> shares(tally.votes.size(), 0.0);
    if (tally.total <= 0) {
        return shares;
    }
    for (std::size_t i = 0; i < shares.size(); ++i) {
        shares[i] = static_cast<double>(tally.votes[i].second) /
                    static_cast<double>(tally.total);
    }
    return shares;
}

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
    if (a.size() != b.size()) {
        throw DimensionMismatch("dominance between vectors of size " +
                                std::to_string(a.size()) + " and " + std::to_string(b.size()));
    }
    bool strict = false;
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k] > b[k]) {
            return false;
        }
        if (a[k] < b[k]) {
            strict = true;
        }
    }
    return strict;
}

std::vector<std::size_t> non_dominated(const std::vector<ObjectiveVector>& vectors) {
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        bool is_dominated = false;
        for (std::size_t j = 0; j < vectors.size() && !is_dominated; ++j) {
            if (j != i && dominates(vectors[j], vectors[i])) {
                is_dominated = true;
            }
        }
        if (!is_dominated) {
            keep.push_back(i);
        }
    }
    return keep;
}

std::vector<int> pareto_ranks(const std::vector<ObjectiveVector>& vectors) {
    const std::size_t n = vectors.size();
    // Deb-style counting: dominated-by counters plus dominance lists.
    std::vector<int> ranks(n, -1);
    std::vector<int> dominated_by(n, 0);
    std::vector<std::vector<std::size_t>> dominating(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && dominates(vectors[i], vectors[j])) {
                dominating[i].push_back(j);
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j : dominating[i]) {
            ++dominated_by[j];
        }
    }
    std::vector<std::size_t> current;
    for (std::size_t i = 0; i < n; ++i) {
        if (dominated_by[i] == 0) {
            ranks[i] = 0;
            current.push_back(i);
        }
    }
    int rank = 0;
    while (!current.empty()) {
        std::vector<std::size_t> next;
        for (std::size_t i : current) {
            for (std::size_t j : dominating[i]) {
                if (--dominated_by[j] == 0) {
                    ranks[j] = rank + 1;
                    next.push_back(j);
                }
            }
        }
        ++rank;
        current = std::move(next);
    }
    return ranks;
}

std::vector<double> crowding_distances(const std::vector<ObjectiveVector>& front) {
    const std::size_t n = front.size();
    std::vector<double> crowd(n, 0.0);
    if (n == 0) {
        return crowd;
    }
    const double inf = std::numeric_limits<double>::infinity();
    if (n <= 2) {
        std::fill(crowd.begin(), crowd.end(), inf);
        return crowd;
    }
    const std::size_t m = front.front().size();
    std::vector<std::size_t> order(n);
    for (std::size_t k = 0; k < m; ++k) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return front[a][k] < front[b][k];
        });
        const double span = front[order.back()][k] - front[order.front()][k];
        crowd[order.front()] = inf;
        crowd[order.back()] = inf;
        if (span <= 0.0) {
            continue;
        }
        for (std::size_t i = 1; i + 1 < n; ++i) {
            crowd[order[i]] += (front[order[i + 1]][k] - front[order[i - 1]][k]) / span;
        }
    }
    return crowd;
}

std::vector<MoKey> mo_fitness_keys(const std::vector<ObjectiveVector>& objectives) {
    const std::vector<int> ranks = pareto_ranks(objectives);
    std::vector<MoKey> keys(objectives.size());
    const int max_rank = ranks.empty() ? -1 : *std::max_element(ranks.begin(), ranks.end());
    for (int rank = 0; rank <= max_rank; ++rank) {
        std::vector<std::size_t> members;
        std::vector<ObjectiveVector> front;
        for (std::size_t i = 0; i < objectives.size(); ++i) {
            if (ranks[i] == rank) {
                members.push_back(i);
                front.push_back(objectives[i]);
            }
        }
        const std::vector<double> crowd = crowding_distances(front);
        for (std::size_t k = 0; k < members.size(); ++k) {
            keys[members[k]] = MoKey{rank, crowd[k]};
        }
    }
    return keys;
}

} // namespace sciswarm
