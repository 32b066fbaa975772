// The swarm registry: living lab states plus the append-only public record
// of claims, evidence, and trust. All mutation happens inside the iteration
// barrier on one logical thread; snapshots handed out between barriers are
// immutable.
#pragma once

#include "sciswarm/types.hpp"

#include <cstddef>
#include <map>
#include <span>
#include <vector>

namespace sciswarm {

class Registry {
public:
    Registry(Bounds bounds, int dimension, std::size_t population_cap);

    // Creates a lab with zero velocity, zero trust, and personal best at the
    // initial position. Throws CapExceeded / OutOfBounds.
    LabId register_lab(const Position& initial_position, int initial_budget);

    // Replaces the record's claim and appends an evidence entry.
    // Throws UnknownLab for dead or absent ids.
    void record_claim(LabId id, const Position& claim, EvidenceEntry entry);

    // Marks the lab dead; its record is retained read-only.
    void mark_dead(LabId id);

    LabState& lab(LabId id);                 // throws UnknownLab
    const LabState& lab(LabId id) const;

    // Living labs in ascending id order.
    std::vector<LabState>& labs() { return labs_; }
    const std::vector<LabState>& labs() const { return labs_; }

    const std::map<LabId, RegistryRecord>& records() const { return records_; }

    std::size_t population() const { return labs_.size(); }
    std::size_t population_cap() const { return population_cap_; }
    const Bounds& bounds() const { return bounds_; }
    int dimension() const { return dimension_; }

    // Copies each living lab's trust into its record (iteration barrier).
    void sync_trust();

    // True when every living lab's trust matches its registry record.
    bool trust_consistent() const;

private:
    Bounds bounds_;
    int dimension_;
    std::size_t population_cap_;
    LabId next_id_ = 0;
    std::vector<LabState> labs_;
    std::map<LabId, RegistryRecord> records_;
};

// Mean squared Euclidean distance to the centroid. The single source of
// truth for the consensus variance; metrics delegates here.
double position_variance(std::span<const Position> positions);
double position_variance(const std::vector<LabState>& labs);

// max_i(trust_i) / sum(trust), or 1/N when total trust is 0.
double trust_concentration(const std::vector<LabState>& labs);

// Variance, trust concentration, and population of the living swarm.
// The caller fills in the global best, which depends on the fitness mode.
// Throws EmptySwarm.
CollectiveState collective_state(const Registry& registry, int iteration,
                                 double initial_variance);

} // namespace sciswarm
