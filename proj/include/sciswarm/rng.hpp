// Deterministic random streams.
//
// Every randomness consumer owns a named substream derived from
// (master seed, stream label, entity id). Streams are keyed by entity id,
// not array index, so removing one entity never perturbs the draws of
// another. The derivation is a splitmix64 chain over the master seed, an
// FNV-1a hash of the label, and the entity id; the resulting 256 bits seed
// a xoshiro256++ engine. Uniform and Gaussian conversion are implemented
// here so that sequences depend only on this file, not on the standard
// library's distribution internals.
#pragma once

#include <cstdint>
#include <string_view>

namespace sciswarm {

class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::string_view label, std::uint64_t entity_id);

    std::uint64_t next_u64();

    // Uniform in [0, 1).
    double next_uniform();
    // Uniform in [lo, hi).
    double next_uniform(double lo, double hi);
    // Marsaglia polar Gaussian; one cached spare per stream.
    double next_gaussian(double mean, double stddev);

private:
    std::uint64_t state_[4];
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace sciswarm
