#include "sciswarm/config.hpp"

#include "sciswarm/errors.hpp"

#include <cmath>
#include <set>
#include <vector>

namespace sciswarm {

namespace {

using nlohmann::json;

json parse_document(const std::string& text) {
    // The callback rejects duplicate keys, which nlohmann would otherwise
    // silently collapse.
    std::vector<std::set<std::string>> object_keys;
    json::parser_callback_t cb = [&](int /*depth*/, json::parse_event_t event,
                                     json& parsed) -> bool {
        switch (event) {
        case json::parse_event_t::object_start:
            object_keys.emplace_back();
            break;
        case json::parse_event_t::object_end:
            object_keys.pop_back();
            break;
        case json::parse_event_t::key: {
            const auto key = parsed.get<std::string>();
            if (!object_keys.back().insert(key).second) {
                throw ParseError("duplicate key '" + key + "'");
            }
            break;
        }
        default:
            break;
        }
        return true;
    };
    try {
        return json::parse(text, cb);
    } catch (const ParseError&) {
        throw;
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed configuration document: ") + e.what());
    }
}

class Reader {
public:
    explicit Reader(json doc) : doc_(std::move(doc)) {
        if (!doc_.is_object()) {
            throw ParseError("configuration document must be a JSON object");
        }
    }

    void set(const std::string& key, json value) { doc_[key] = std::move(value); }

    bool has(const std::string& key) const { return doc_.contains(key); }

    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) {
        const json* v = take(key);
        if (!v) return fallback;
        if (!v->is_number_unsigned()) {
            throw ValidationError("key '" + key + "' must be an unsigned integer");
        }
        return v->get<std::uint64_t>();
    }

    int get_int(const std::string& key, int fallback) {
        const json* v = take(key);
        if (!v) return fallback;
        if (!v->is_number_integer()) {
            throw ValidationError("key '" + key + "' must be an integer");
        }
        return v->get<int>();
    }

    double get_double(const std::string& key, double fallback) {
        const json* v = take(key);
        if (!v) return fallback;
        if (!v->is_number()) {
            throw ValidationError("key '" + key + "' must be a number");
        }
        return v->get<double>();
    }

    bool get_bool(const std::string& key, bool fallback) {
        const json* v = take(key);
        if (!v) return fallback;
        if (!v->is_boolean()) {
            throw ValidationError("key '" + key + "' must be a boolean");
        }
        return v->get<bool>();
    }

    std::string get_string(const std::string& key, const std::string& fallback) {
        const json* v = take(key);
        if (!v) return fallback;
        if (!v->is_string()) {
            throw ValidationError("key '" + key + "' must be a string");
        }
        return v->get<std::string>();
    }

    void reject_unknown() const {
        for (const auto& [key, value] : doc_.items()) {
            if (!consumed_.contains(key)) {
                throw ValidationError("unknown configuration key '" + key + "'");
            }
        }
    }

private:
    const json* take(const std::string& key) {
        consumed_.insert(key);
        auto it = doc_.find(key);
        return it == doc_.end() ? nullptr : &*it;
    }

    json doc_;
    std::set<std::string> consumed_;
};

void require(bool condition, const std::string& key, const std::string& message) {
    if (!condition) {
        throw ValidationError("key '" + key + "': " + message);
    }
}

} // namespace

const char* to_string(FitnessMode mode) {
    switch (mode) {
    case FitnessMode::reference: return "reference";
    case FitnessMode::votes: return "votes";
    case FitnessMode::multi_objective: return "multi_objective";
    }
    return "?";
}

FitnessMode fitness_mode_from(const std::string& name) {
    if (name == "reference") return FitnessMode::reference;
    if (name == "votes") return FitnessMode::votes;
    if (name == "multi_objective") return FitnessMode::multi_objective;
    throw ValidationError("key 'mode': unknown fitness mode '" + name + "'");
}

Landscape landscape_from(const RunConfig& config) {
    Landscape ls = Landscape::make(config.landscape_name, config.dimension);
    if (config.reference_free) {
        ls.drop_reference();
    }
    return ls;
}

RunConfig load_config(const std::string& json_text, const BehaviorCatalog& catalog,
                      const CliOverrides& cli,
                      const std::map<std::string, nlohmann::json>& key_overrides) {
    Reader reader(parse_document(json_text));
    for (const auto& [key, value] : key_overrides) {
        reader.set(key, value);
    }
    if (cli.seed) reader.set("seed", *cli.seed);
    if (cli.iterations) reader.set("iterations", *cli.iterations);
    if (cli.labs) reader.set("lifecycle.initial_population", *cli.labs);
    if (cli.landscape) reader.set("landscape", *cli.landscape);
    if (cli.dim) reader.set("dim", *cli.dim);
    if (cli.mode) reader.set("mode", *cli.mode);
    if (cli.out) reader.set("out", *cli.out);

    for (const char* key : {"seed", "landscape", "dim", "iterations"}) {
        if (!reader.has(key)) {
            throw ValidationError(std::string("key '") + key + "' is required");
        }
    }

    RunConfig cfg;
    cfg.seed = reader.get_u64("seed", 0);
    cfg.landscape_name = reader.get_string("landscape", "");
    cfg.dimension = reader.get_int("dim", 1);
    cfg.iterations = reader.get_int("iterations", 1);
    cfg.mode = fitness_mode_from(reader.get_string("mode", "reference"));
    cfg.out_dir = reader.get_string("out", "out");
    cfg.reference_free = reader.get_bool("landscape.reference_free", false);
    cfg.behavior = reader.get_string("lab.behavior", "default");

    require(cfg.dimension >= 1, "dim", "must be >= 1");
    require(cfg.iterations >= 1, "iterations", "must be >= 1");

    Landscape ls;
    try {
        ls = Landscape::make(cfg.landscape_name, cfg.dimension);
    } catch (const UnknownLandscape& e) {
        throw ValidationError(std::string("key 'landscape': ") + e.what());
    }
    const double range = ls.bounds().range();

    SwarmParams& swarm = cfg.swarm;
    swarm.inertia_min = reader.get_double("engine.inertia_min", swarm.inertia_min);
    swarm.inertia_max = reader.get_double("engine.inertia_max", swarm.inertia_max);
    swarm.coeff_min = reader.get_double("engine.coeff_min", swarm.coeff_min);
    swarm.coeff_max = reader.get_double("engine.coeff_max", swarm.coeff_max);
    swarm.v_max = reader.get_double("engine.v_max", 0.5 * range);
    swarm.epsilon_start = reader.get_double("engine.epsilon_start", swarm.epsilon_start);
    swarm.epsilon_end = reader.get_double("engine.epsilon_end", swarm.epsilon_end);
    swarm.explore_scale = reader.get_double("engine.explore_scale", 0.1 * range);
    swarm.archive_capacity = static_cast<std::size_t>(
        reader.get_int("engine.archive_capacity", static_cast<int>(swarm.archive_capacity)));

    ReviewParams& review = cfg.review;
    review.reviewers = reader.get_int("review.reviewers", review.reviewers);
    review.votes_per_reviewer =
        reader.get_int("review.votes_per_reviewer", review.votes_per_reviewer);
    review.beta = reader.get_double("review.beta", review.beta);
    review.noise = reader.get_double("review.noise", review.noise);
    review.trust_decay = reader.get_double("review.trust_decay", review.trust_decay);
    review.dominance_cap = reader.get_double("review.dominance_cap", review.dominance_cap);
    review.cap_enabled = reader.get_bool("review.cap_enabled", review.cap_enabled);

    LifecycleParams& life = cfg.lifecycle;
    life.initial_budget = reader.get_int("lifecycle.initial_budget", life.initial_budget);
    life.max_budget = reader.get_int("lifecycle.max_budget", life.max_budget);
    life.selection_fraction =
        reader.get_double("lifecycle.selection_fraction", life.selection_fraction);
    life.population_cap = static_cast<std::size_t>(
        reader.get_int("lifecycle.population_cap", static_cast<int>(life.population_cap)));
    life.initial_population = static_cast<std::size_t>(reader.get_int(
        "lifecycle.initial_population", static_cast<int>(life.initial_population)));
    life.explorer_fraction =
        reader.get_double("lifecycle.explorer_fraction", life.explorer_fraction);
    life.spawn_scale = reader.get_double("lifecycle.spawn_scale", 0.05 * range);

    cfg.link_threshold =
        reader.get_double("metrics.link_threshold",
                          0.5 * swarm.explore_scale * std::sqrt(static_cast<double>(cfg.dimension)));

    reader.reject_unknown();

    // Cross-field invariants.
    require(swarm.inertia_min <= swarm.inertia_max, "engine.inertia_min",
            "must not exceed engine.inertia_max");
    require(swarm.coeff_min <= swarm.coeff_max, "engine.coeff_min",
            "must not exceed engine.coeff_max");
    require(swarm.v_max > 0.0, "engine.v_max", "must be positive");
    require(swarm.epsilon_start >= 0.0 && swarm.epsilon_start <= 1.0, "engine.epsilon_start",
            "must lie in [0, 1]");
    require(swarm.epsilon_end >= 0.0 && swarm.epsilon_end <= swarm.epsilon_start,
            "engine.epsilon_end", "the exploration schedule must be non-increasing");
    require(swarm.explore_scale > 0.0, "engine.explore_scale", "must be positive");
    require(swarm.archive_capacity >= 1, "engine.archive_capacity", "must be >= 1");

    require(review.reviewers >= 1, "review.reviewers", "must be >= 1");
    require(review.votes_per_reviewer >= 1, "review.votes_per_reviewer", "must be >= 1");
    require(review.beta >= 0.0 && review.beta <= 1.0, "review.beta", "must lie in [0, 1]");
    require(review.noise >= 0.0, "review.noise", "must be >= 0");
    require(review.trust_decay >= 0.0 && review.trust_decay <= 1.0, "review.trust_decay",
            "must lie in [0, 1]");

    require(life.initial_budget >= 1, "lifecycle.initial_budget", "must be >= 1");
    require(life.initial_budget <= life.max_budget, "lifecycle.initial_budget",
            "must not exceed lifecycle.max_budget");
    require(life.selection_fraction > 0.0 && life.selection_fraction <= 0.5,
            "lifecycle.selection_fraction", "must lie in (0, 0.5]");
    require(life.population_cap >= 1, "lifecycle.population_cap", "must be >= 1");
    require(life.initial_population >= 1 && life.initial_population <= life.population_cap,
            "lifecycle.initial_population", "must lie in [1, lifecycle.population_cap]");
    require(life.explorer_fraction >= 0.0 && life.explorer_fraction < 1.0,
            "lifecycle.explorer_fraction", "must lie in [0, 1)");
    require(life.spawn_scale > 0.0, "lifecycle.spawn_scale", "must be positive");

    if (review.cap_enabled) {
        require(review.dominance_cap > 1.0 / static_cast<double>(life.population_cap) &&
                    review.dominance_cap <= 1.0,
                "review.dominance_cap", "must lie in (1/population_cap, 1]");
    }

    require(cfg.link_threshold > 0.0, "metrics.link_threshold", "must be positive");

    if (cfg.mode == FitnessMode::reference) {
        require(!cfg.reference_free, "mode",
                "reference mode needs a landscape with a reference solution");
    }
    if (cfg.mode == FitnessMode::multi_objective) {
        require(ls.objective_count() >= 2, "mode",
                "multi_objective mode needs a landscape with at least 2 objectives");
    }

    if (catalog.find(cfg.behavior) == nullptr) {
        throw ValidationError("key 'lab.behavior': unknown behavior '" + cfg.behavior + "'");
    }
    return cfg;
}

nlohmann::ordered_json config_echo(const RunConfig& cfg) {
    nlohmann::ordered_json doc;
    doc["seed"] = cfg.seed;
    doc["landscape"] = cfg.landscape_name;
    doc["dim"] = cfg.dimension;
    doc["iterations"] = cfg.iterations;
    doc["mode"] = to_string(cfg.mode);
    doc["out"] = cfg.out_dir;
    doc["landscape.reference_free"] = cfg.reference_free;
    doc["lab.behavior"] = cfg.behavior;
    doc["engine.inertia_min"] = cfg.swarm.inertia_min;
    doc["engine.inertia_max"] = cfg.swarm.inertia_max;
    doc["engine.coeff_min"] = cfg.swarm.coeff_min;
    doc["engine.coeff_max"] = cfg.swarm.coeff_max;
    doc["engine.v_max"] = cfg.swarm.v_max;
    doc["engine.epsilon_start"] = cfg.swarm.epsilon_start;
    doc["engine.epsilon_end"] = cfg.swarm.epsilon_end;
    doc["engine.explore_scale"] = cfg.swarm.explore_scale;
    doc["engine.archive_capacity"] = cfg.swarm.archive_capacity;
    doc["review.reviewers"] = cfg.review.reviewers;
    doc["review.votes_per_reviewer"] = cfg.review.votes_per_reviewer;
    doc["review.beta"] = cfg.review.beta;
    doc["review.noise"] = cfg.review.noise;
    doc["review.trust_decay"] = cfg.review.trust_decay;
    doc["review.dominance_cap"] = cfg.review.dominance_cap;
    doc["review.cap_enabled"] = cfg.review.cap_enabled;
    doc["lifecycle.initial_budget"] = cfg.lifecycle.initial_budget;
    doc["lifecycle.max_budget"] = cfg.lifecycle.max_budget;
    doc["lifecycle.selection_fraction"] = cfg.lifecycle.selection_fraction;
    doc["lifecycle.population_cap"] = cfg.lifecycle.population_cap;
    doc["lifecycle.initial_population"] = cfg.lifecycle.initial_population;
    doc["lifecycle.explorer_fraction"] = cfg.lifecycle.explorer_fraction;
    doc["lifecycle.spawn_scale"] = cfg.lifecycle.spawn_scale;
    doc["metrics.link_threshold"] = cfg.link_threshold;
    return doc;
}

} // namespace sciswarm
