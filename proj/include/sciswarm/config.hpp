// Experiment configuration: a single flat JSON document with dotted key
// namespaces. Unspecified keys take module defaults; bounds-derived
// defaults (v_max, explore and spawn scales, camp link threshold) are
// resolved against the chosen landscape at load time.
#pragma once

#include "sciswarm/behaviors.hpp"
#include "sciswarm/engine.hpp"
#include "sciswarm/landscape.hpp"
#include "sciswarm/lifecycle.hpp"
#include "sciswarm/review.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace sciswarm {

struct RunConfig {
    std::uint64_t seed = 0;
    int iterations = 1; // T
    std::string landscape_name;
    int dimension = 1;
    FitnessMode mode = FitnessMode::reference;
    bool reference_free = false;
    std::string out_dir = "out";
    std::string behavior = "default";
    SwarmParams swarm;
    LifecycleParams lifecycle;
    ReviewParams review;
    double link_threshold = 0.0; // resolved to 0.5 * explore_scale * sqrt(D)
};

// Command-line flags that shadow document keys.
struct CliOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<int> iterations;
    std::optional<std::size_t> labs; // lifecycle.initial_population
    std::optional<std::string> landscape;
    std::optional<int> dim;
    std::optional<std::string> mode;
    std::optional<std::string> out;
};

// Parses, applies overrides, fills defaults, and validates every invariant.
// Throws ParseError for malformed documents (including duplicate keys) and
// ValidationError naming the offending key. `key_overrides` sets individual
// document keys programmatically (the sweep path).
RunConfig load_config(const std::string& json_text, const BehaviorCatalog& catalog,
                      const CliOverrides& cli = {},
                      const std::map<std::string, nlohmann::json>& key_overrides = {});

// The fully-resolved flat document, echoed into the log's init event.
nlohmann::ordered_json config_echo(const RunConfig& config);

const char* to_string(FitnessMode mode);
FitnessMode fitness_mode_from(const std::string& name); // throws ValidationError

// The landscape the config describes, with the reference stripped when the
// run is configured reference-free.
Landscape landscape_from(const RunConfig& config);

} // namespace sciswarm
