#include "sciswarm/runner.hpp"

#include "sciswarm/errors.hpp"
#include "sciswarm/lifecycle.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace sciswarm {

namespace {

nlohmann::ordered_json make_event(int iteration, EventKind kind) {
    nlohmann::ordered_json event;
    event["iteration"] = iteration;
    event["kind"] = to_string(kind);
    return event;
}

nlohmann::ordered_json budget_pairs(const Registry& registry) {
    auto pairs = nlohmann::ordered_json::array();
    for (const LabState& lab : registry.labs()) {
        pairs.push_back({lab.lab_id, lab.budget});
    }
    return pairs;
}

nlohmann::ordered_json trust_pairs(const Registry& registry) {
    auto pairs = nlohmann::ordered_json::array();
    for (const LabState& lab : registry.labs()) {
        pairs.push_back({lab.lab_id, lab.trust});
    }
    return pairs;
}

std::string csv_cell(const std::optional<double>& value) {
    return value ? nlohmann::json(*value).dump() : std::string();
}

constexpr char kCsvHeader[] =
    "iteration,population,consensus_variance,mean_pairwise_distance,camp_count,"
    "best_quality,vote_truth_rho,hypervolume,births,deaths";

} // namespace

nlohmann::ordered_json to_json(const RunSummary& summary) {
    nlohmann::ordered_json doc;
    doc["status"] = summary.status;
    doc["iterations_run"] = summary.iterations_run;
    doc["final_population"] = summary.final_population;
    doc["births"] = summary.births;
    doc["deaths"] = summary.deaths;
    if (summary.final_best_quality) {
        doc["final_best_quality"] = *summary.final_best_quality;
    } else {
        doc["final_best_quality"] = nullptr;
    }
    doc["final_camp_count"] = summary.final_camp_count;
    return doc;
}

Simulation::Simulation(RunConfig config, const BehaviorCatalog& catalog,
                       std::ostream* events_out, std::ostream* metrics_out)
    : config_(std::move(config)),
      landscape_(landscape_from(config_)),
      registry_(landscape_.bounds(), landscape_.dimension(), config_.lifecycle.population_cap),
      log_(events_out),
      metrics_out_(metrics_out),
      lifecycle_stream_(config_.seed, "lifecycle", 0),
      archive_(config_.swarm.archive_capacity, landscape_.objective_ceiling()) {
    const BehaviorFn* behavior = catalog.find(config_.behavior);
    if (behavior == nullptr) {
        throw ValidationError("key 'lab.behavior': unknown behavior '" + config_.behavior + "'");
    }
    behavior_ = *behavior;
    reviewer_streams_.reserve(static_cast<std::size_t>(config_.review.reviewers));
    for (int r = 0; r < config_.review.reviewers; ++r) {
        reviewer_streams_.emplace_back(config_.seed, "reviewer", static_cast<std::uint64_t>(r));
    }
    initialize();
}

void Simulation::initialize() {
    const Bounds& bounds = landscape_.bounds();
    for (std::size_t i = 0; i < config_.lifecycle.initial_population; ++i) {
        Position position(static_cast<std::size_t>(config_.dimension));
        for (double& x : position) {
            x = lifecycle_stream_.next_uniform(bounds.lo, bounds.hi);
        }
        const LabId id = registry_.register_lab(position, config_.lifecycle.initial_budget);
        lab_streams_.emplace(id, RngStream(config_.seed, "lab", id));
    }
    assign_explorer_flags(registry_, config_.lifecycle.explorer_fraction, 0);

    // Iteration 0 is the initial snapshot: claims recorded and bests seeded
    // before any movement.
    for (LabState& lab : registry_.labs()) {
        const ObjectiveVector objectives = landscape_.evaluate(lab.position);
        registry_.record_claim(lab.lab_id, lab.position, EvidenceEntry{0, objectives});
        switch (config_.mode) {
        case FitnessMode::reference: {
            const double quality = -landscape_.reference_error(objectives);
            update_personal_best(lab, lab.position, quality);
            update_swarm_best(global_best_, lab.position, quality, lab.lab_id, 0);
            break;
        }
        case FitnessMode::votes:
            // No votes exist yet; everyone starts at share zero, so the
            // lowest id holds the initial swarm best.
            update_personal_best(lab, lab.position, 0.0);
            update_swarm_best(global_best_, lab.position, 0.0, lab.lab_id, 0);
            break;
        case FitnessMode::multi_objective:
            lab.personal_best_objectives = objectives;
            archive_.insert(lab.position, objectives, lab.lab_id, 0);
            break;
        }
    }
    initial_variance_ = position_variance(registry_.labs());

    if (log_.enabled()) {
        auto event = make_event(0, EventKind::init);
        event["config"] = config_echo(config_);
        auto labs = nlohmann::ordered_json::array();
        for (const LabState& lab : registry_.labs()) {
            nlohmann::ordered_json entry;
            entry["lab"] = lab.lab_id;
            entry["position"] = lab.position;
            entry["budget"] = lab.budget;
            entry["explorer"] = lab.explorer_flag;
            labs.push_back(std::move(entry));
        }
        event["labs"] = std::move(labs);
        log_.write(event);
    }
    if (metrics_out_) {
        *metrics_out_ << kCsvHeader << '\n';
    }

    IterationMetrics row;
    row.iteration = 0;
    append_metrics_row(std::move(row));
    log_.flush();
}

void Simulation::apply_action(LabState& lab, const Action& action) {
    if (action.kind == Action::Kind::hold) {
        return;
    }
    const Bounds& bounds = landscape_.bounds();
    for (double x : action.position) {
        if (!bounds.contains(x)) {
            throw OutOfBounds("behavior proposed an out-of-bounds position");
        }
    }
    for (double v : action.velocity) {
        if (std::abs(v) > config_.swarm.v_max) {
            throw OutOfBounds("behavior proposed a velocity beyond v_max");
        }
    }
    lab.position = action.position;
    lab.velocity = action.velocity;
}

double Simulation::hidden_error(const ObjectiveVector& objectives) const {
    return landscape_.reference_error(objectives);
}

std::optional<double> Simulation::best_quality_metric() const {
    if (config_.mode == FitnessMode::multi_objective) {
        if (!landscape_.has_reference() || archive_.empty()) {
            return std::nullopt;
        }
        double best = kNoQuality;
        for (const ArchiveEntry& entry : archive_.entries()) {
            best = std::max(best, -landscape_.reference_error(entry.objectives));
        }
        return best;
    }
    if (!global_best_.valid()) {
        return std::nullopt;
    }
    return global_best_.quality;
}

bool Simulation::step() {
    if (finished_) {
        return false;
    }
    const int t = ++iteration_;
    const int horizon = config_.iterations;

    // (1) collective state and schedules
    CollectiveState collective = collective_state(registry_, t, initial_variance_);
    if (config_.mode != FitnessMode::multi_objective && global_best_.valid()) {
        collective.global_best = global_best_.position;
        collective.global_best_quality = global_best_.quality;
    }
    const Coefficients coeffs = decode_coefficients(collective, config_.swarm, t, horizon);
    const double epsilon = exploration_rate(config_.swarm, t, horizon);

    SwarmSnapshot snapshot;
    snapshot.iteration = t;
    snapshot.coefficients = coeffs;
    snapshot.epsilon = epsilon;
    snapshot.bounds = landscape_.bounds();
    snapshot.params = &config_.swarm;
    snapshot.mode = config_.mode;
    snapshot.global_best = &global_best_;
    snapshot.archive = &archive_;

    // (2) per-lab moves, evaluation, claim recording
    std::vector<LabId> living;
    std::vector<ObjectiveVector> objectives;
    living.reserve(registry_.population());
    objectives.reserve(registry_.population());
    IterationMetrics row;
    row.iteration = t;
    for (LabState& lab : registry_.labs()) {
        RngStream& stream = lab_streams_.at(lab.lab_id);
        const Action action = behavior_(lab, snapshot, stream);
        apply_action(lab, action);
        ObjectiveVector objs = landscape_.evaluate(lab.position);
        registry_.record_claim(lab.lab_id, lab.position, EvidenceEntry{t, objs});
        if (log_.enabled()) {
            const bool is_explore = action.kind == Action::Kind::explore_move;
            auto event = make_event(t, is_explore ? EventKind::explore : EventKind::move);
            event["lab"] = lab.lab_id;
            event["position"] = lab.position;
            if (is_explore) {
                event["forced"] = action.forced_explore;
            }
            log_.write(event);
        }
        switch (action.kind) {
        case Action::Kind::explore_move:
            if (action.forced_explore) {
                ++row.forced_explores;
            } else {
                ++row.free_explores;
            }
            break;
        default:
            ++row.pso_moves;
            break;
        }
        living.push_back(lab.lab_id);
        objectives.push_back(std::move(objs));
    }

    // (3) voting, trust settlement, dominance cap
    std::vector<double> shares(living.size(), 0.0);
    bool voted = false;
    if (config_.mode == FitnessMode::votes) {
        const std::vector<double> qualities = reviewer_base_quality(objectives);
        std::vector<double> trust;
        trust.reserve(living.size());
        for (const LabState& lab : registry_.labs()) {
            trust.push_back(lab.trust);
        }
        const VoteTally tally = cast_votes(config_.review, living, qualities, trust,
                                           reviewer_streams_, t);
        if (log_.enabled()) {
            auto event = make_event(t, EventKind::vote_tally);
            auto votes = nlohmann::ordered_json::array();
            for (const auto& [id, count] : tally.votes) {
                votes.push_back({id, count});
            }
            event["votes"] = std::move(votes);
            event["total"] = tally.total;
            log_.write(event);
        }
        settle_trust(trust, tally, config_.review);
        {
            std::size_t i = 0;
            for (LabState& lab : registry_.labs()) {
                lab.trust = trust[i++];
            }
        }
        registry_.sync_trust();
        if (log_.enabled()) {
            auto event = make_event(t, EventKind::trust_update);
            event["trust"] = trust_pairs(registry_);
            log_.write(event);
        }
        shares = vote_shares(tally);
        voted = true;
    }

    // (4) fitness and best updates
    std::vector<double> quality(living.size(), 0.0);
    std::vector<MoKey> mo_keys;
    switch (config_.mode) {
    case FitnessMode::reference:
        for (std::size_t i = 0; i < living.size(); ++i) {
            quality[i] = -landscape_.reference_error(objectives[i]);
        }
        break;
    case FitnessMode::votes:
        quality = shares;
        break;
    case FitnessMode::multi_objective:
        mo_keys = mo_fitness_keys(objectives);
        break;
    }
    {
        std::size_t i = 0;
        for (LabState& lab : registry_.labs()) {
            if (config_.mode == FitnessMode::multi_objective) {
                update_personal_best_pareto(lab, lab.position, objectives[i]);
                if (archive_.insert(lab.position, objectives[i], lab.lab_id, t) &&
                    log_.enabled()) {
                    auto event = make_event(t, EventKind::best_update);
                    event["lab"] = lab.lab_id;
                    event["archive_size"] = archive_.size();
                    log_.write(event);
                }
            } else {
                update_personal_best(lab, lab.position, quality[i]);
                if (update_swarm_best(global_best_, lab.position, quality[i], lab.lab_id, t) &&
                    log_.enabled()) {
                    auto event = make_event(t, EventKind::best_update);
                    event["lab"] = lab.lab_id;
                    event["quality"] = quality[i];
                    log_.write(event);
                }
            }
            ++i;
        }
    }

    // (5) selection, pruning, spawning, explorer rotation
    std::vector<std::size_t> order(living.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    if (config_.mode == FitnessMode::multi_objective) {
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (mo_keys[a].rank != mo_keys[b].rank) return mo_keys[a].rank < mo_keys[b].rank;
            if (mo_keys[a].crowding != mo_keys[b].crowding)
                return mo_keys[a].crowding > mo_keys[b].crowding;
            return living[a] < living[b];
        });
    } else {
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (quality[a] != quality[b]) return quality[a] > quality[b];
            return living[a] < living[b];
        });
    }
    std::vector<LabId> ranking;
    ranking.reserve(order.size());
    for (std::size_t idx : order) {
        ranking.push_back(living[idx]);
    }
    update_budgets(registry_, ranking, config_.lifecycle);
    if (log_.enabled()) {
        auto event = make_event(t, EventKind::budget_update);
        event["budgets"] = budget_pairs(registry_);
        log_.write(event);
    }

    const LifecycleOutcome outcome =
        prune_and_spawn(registry_, config_.lifecycle, t, lifecycle_stream_);
    for (LabId id : outcome.pruned) {
        ++total_deaths_;
        if (log_.enabled()) {
            auto event = make_event(t, EventKind::prune);
            event["lab"] = id;
            log_.write(event);
        }
    }
    if (outcome.extinct) {
        if (log_.enabled()) {
            log_.write(make_event(t, EventKind::extinction));
        }
        finished_ = true;
        emit_summary("extinct");
        return false;
    }
    for (const SpawnRecord& spawn : outcome.spawned) {
        ++total_births_;
        lab_streams_.emplace(spawn.child, RngStream(config_.seed, "lab", spawn.child));
        if (config_.mode == FitnessMode::votes) {
            // Children enter at share zero, like the initial population.
            registry_.lab(spawn.child).personal_best_quality = 0.0;
        }
        if (log_.enabled()) {
            auto event = make_event(t, EventKind::spawn);
            event["lab"] = spawn.child;
            event["parent"] = spawn.parent;
            event["position"] = spawn.position;
            event["budget"] = config_.lifecycle.initial_budget;
            log_.write(event);
        }
    }

    // (6) metrics row and flush
    row.births = static_cast<int>(outcome.spawned.size());
    row.deaths = static_cast<int>(outcome.pruned.size());
    if (voted && landscape_.has_reference() && living.size() >= 2) {
        std::vector<double> hidden;
        hidden.reserve(living.size());
        for (const ObjectiveVector& objs : objectives) {
            hidden.push_back(-hidden_error(objs));
        }
        row.vote_truth_rho = rank_correlation(shares, hidden);
    }
    append_metrics_row(std::move(row));
    registry_.sync_trust();
    check_barrier_invariants();
    log_.flush();

    if (iteration_ >= horizon) {
        finished_ = true;
        emit_summary("completed");
        return false;
    }
    return true;
}

void Simulation::append_metrics_row(IterationMetrics row) {
    row.population = static_cast<int>(registry_.population());
    std::vector<Position> positions;
    std::vector<std::pair<LabId, Position>> labeled;
    positions.reserve(registry_.population());
    labeled.reserve(registry_.population());
    for (const LabState& lab : registry_.labs()) {
        positions.push_back(lab.position);
        labeled.emplace_back(lab.lab_id, lab.position);
    }
    row.consensus_variance = consensus_variance(positions);
    row.mean_pairwise_distance = mean_pairwise_distance(positions);
    CampAssignment camps = detect_camps(labeled, config_.link_threshold);
    row.camp_count = camps.camp_count;
    row.camp_assignment = std::move(camps.assignment);
    row.best_quality = best_quality_metric();
    if (config_.mode == FitnessMode::multi_objective) {
        row.hypervolume = archive_.hypervolume();
    }
    if (metrics_out_) {
        *metrics_out_ << row.iteration << ',' << row.population << ','
                      << nlohmann::json(row.consensus_variance).dump() << ','
                      << nlohmann::json(row.mean_pairwise_distance).dump() << ','
                      << row.camp_count << ',' << csv_cell(row.best_quality) << ','
                      << csv_cell(row.vote_truth_rho) << ',' << csv_cell(row.hypervolume) << ','
                      << row.births << ',' << row.deaths << '\n';
        if (!*metrics_out_) {
            throw IoError("failed to write metrics stream");
        }
    }
    history_.push_back(std::move(row));
}

void Simulation::emit_summary(const std::string& status) {
    RunSummary summary;
    summary.status = status;
    summary.iterations_run = iteration_;
    summary.final_population = static_cast<int>(registry_.population());
    summary.births = total_births_;
    summary.deaths = total_deaths_;
    summary.final_best_quality = best_quality_metric();
    summary.final_camp_count =
        (status == "completed" && !history_.empty()) ? history_.back().camp_count : 0;

    if (log_.enabled()) {
        auto event = make_event(iteration_, EventKind::summary);
        event["status"] = summary.status;
        event["final_population"] = summary.final_population;
        event["budgets"] = budget_pairs(registry_);
        event["trust"] = trust_pairs(registry_);
        event["births"] = summary.births;
        event["deaths"] = summary.deaths;
        if (summary.final_best_quality) {
            event["best_quality"] = *summary.final_best_quality;
        } else {
            event["best_quality"] = nullptr;
        }
        event["camp_count"] = summary.final_camp_count;
        log_.write(event);
        log_.flush();
    }
    summary_ = std::move(summary);
}

void Simulation::check_barrier_invariants() const {
    const Bounds& bounds = landscape_.bounds();
    for (const LabState& lab : registry_.labs()) {
        for (double x : lab.position) {
            if (!bounds.contains(x)) {
                throw SimError("barrier invariant violated: position out of bounds");
            }
        }
        for (double v : lab.velocity) {
            if (std::abs(v) > config_.swarm.v_max) {
                throw SimError("barrier invariant violated: velocity beyond v_max");
            }
        }
    }
    if (!registry_.trust_consistent()) {
        throw SimError("barrier invariant violated: registry trust out of sync");
    }
}

RunSummary Simulation::run_to_end() {
    while (step()) {
    }
    return *summary_;
}

const RunSummary& Simulation::summary() const {
    if (!summary_) {
        throw SimError("run has not finished");
    }
    return *summary_;
}

const BestRecord& Simulation::global_best() const {
    if (config_.mode == FitnessMode::multi_objective) {
        throw ModeMismatch("multi-objective runs keep an archive, not a single best");
    }
    return global_best_;
}

const ParetoArchive& Simulation::archive() const {
    if (config_.mode != FitnessMode::multi_objective) {
        throw ModeMismatch("the archive exists only in multi-objective runs");
    }
    return archive_;
}

RunSummary run(const RunConfig& config, const BehaviorCatalog& catalog,
               const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        throw IoError("cannot create output directory '" + out_dir.string() + "': " +
                      ec.message());
    }
    std::ofstream events(out_dir / "events.jsonl");
    std::ofstream metrics(out_dir / "metrics.csv");
    if (!events || !metrics) {
        throw IoError("cannot open output files in '" + out_dir.string() + "'");
    }
    Simulation sim(config, catalog, &events, &metrics);
    const RunSummary summary = sim.run_to_end();
    std::ofstream summary_file(out_dir / "summary.json");
    if (!summary_file) {
        throw IoError("cannot open summary.json in '" + out_dir.string() + "'");
    }
    summary_file << to_json(summary).dump(2) << '\n';
    if (!summary_file) {
        throw IoError("failed to write summary.json");
    }
    return summary;
}

std::vector<SweepResult> sweep(const std::string& config_text, const BehaviorCatalog& catalog,
                               const std::string& key, const std::vector<std::string>& values,
                               const CliOverrides& cli, const std::filesystem::path& out_root) {
    std::vector<SweepResult> results;
    results.reserve(values.size());
    for (const std::string& raw : values) {
        nlohmann::json value = nlohmann::json::parse(raw, nullptr, false);
        if (value.is_discarded()) {
            value = raw; // plain string value
        }
        const RunConfig config = load_config(config_text, catalog, cli, {{key, value}});
        const std::filesystem::path dir = out_root / (key + "=" + raw);
        results.push_back(SweepResult{raw, dir, run(config, catalog, dir)});
    }
    return results;
}

} // namespace sciswarm
