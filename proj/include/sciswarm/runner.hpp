// Experiment orchestration: deterministic seeding, the fixed-order
// iteration barrier, event logging, metric export, and the sweep driver.
//
// Barrier order within one iteration:
//   1. collective state, coefficient decoding, exploration rate
//   2. per lab (ascending id): behavior action, position update,
//      landscape evaluation, claim recording
//   3. votes mode only: vote casting, trust settlement, dominance cap
//   4. fitness scoring and personal/swarm best updates
//   5. budget updates, pruning, spawning, explorer reassignment
//   6. metrics row and event flush
//
// Randomness is split into named substreams derived from
// (master seed, label, entity id): one "lab" stream per lab, one
// "reviewer" stream per reviewer, and a single "lifecycle" stream for
// initialization and spawn jitter. Streams are keyed by entity id, so
// pruning one lab never perturbs another lab's draws, and logging verbosity
// cannot affect trajectories.
#pragma once

#include "sciswarm/behaviors.hpp"
#include "sciswarm/config.hpp"
#include "sciswarm/engine.hpp"
#include "sciswarm/events.hpp"
#include "sciswarm/landscape.hpp"
#include "sciswarm/metrics.hpp"
#include "sciswarm/registry.hpp"
#include "sciswarm/review.hpp"

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sciswarm {

struct RunSummary {
    std::string status; // "completed" | "extinct"
    int iterations_run = 0;
    int final_population = 0;
    int births = 0;
    int deaths = 0;
    std::optional<double> final_best_quality;
    int final_camp_count = 0;
};

nlohmann::ordered_json to_json(const RunSummary& summary);

class Simulation {
public:
    // Null streams disable event/metric output; trajectories are identical
    // either way.
    Simulation(RunConfig config, const BehaviorCatalog& catalog,
               std::ostream* events_out = nullptr, std::ostream* metrics_out = nullptr);

    // Executes one iteration. Returns false once the run has finished
    // (horizon reached or extinction).
    bool step();

    RunSummary run_to_end();

    bool finished() const { return finished_; }
    int iteration() const { return iteration_; }
    const RunSummary& summary() const;

    const RunConfig& config() const { return config_; }
    const Landscape& landscape() const { return landscape_; }
    const Registry& registry() const { return registry_; }
    const std::vector<IterationMetrics>& history() const { return history_; }

    // Scalar-fitness swarm best; throws ModeMismatch in multi-objective runs.
    const BestRecord& global_best() const;
    // Non-dominated archive; throws ModeMismatch in scalar-fitness runs.
    const ParetoArchive& archive() const;

private:
    void initialize();
    void apply_action(LabState& lab, const Action& action);
    double hidden_error(const ObjectiveVector& objectives) const;
    std::optional<double> best_quality_metric() const;
    void append_metrics_row(IterationMetrics row);
    void emit_summary(const std::string& status);
    void check_barrier_invariants() const;

    RunConfig config_;
    BehaviorFn behavior_;
    Landscape landscape_;
    Registry registry_;
    EventLog log_;
    std::ostream* metrics_out_ = nullptr;

    std::map<LabId, RngStream> lab_streams_;
    std::vector<RngStream> reviewer_streams_;
    RngStream lifecycle_stream_;

    BestRecord global_best_;
    ParetoArchive archive_;
    double initial_variance_ = 0.0;

    int iteration_ = 0;
    bool finished_ = false;
    int total_births_ = 0;
    int total_deaths_ = 0;
    std::vector<IterationMetrics> history_;
    std::optional<RunSummary> summary_;
};

// File-backed run: writes events.jsonl, metrics.csv, and summary.json into
// out_dir. Throws IoError when the directory or files cannot be written.
RunSummary run(const RunConfig& config, const BehaviorCatalog& catalog,
               const std::filesystem::path& out_dir);

struct SweepResult {
    std::string value;
    std::filesystem::path dir;
    RunSummary summary;
};

// Grid over one configuration key: one subdirectory per value, each holding
// a full run's outputs. Values are parsed as JSON scalars where possible
// and fall back to strings.
std::vector<SweepResult> sweep(const std::string& config_text, const BehaviorCatalog& catalog,
                               const std::string& key, const std::vector<std::string>& values,
                               const CliOverrides& cli, const std::filesystem::path& out_root);

} // namespace sciswarm
