// sciswarm command line: run experiments, audit logs, sweep parameters.
//
// Exit codes: 0 success, 1 replay audit mismatch, 2 configuration error,
// 3 extinction, 4 I/O error.
#include "sciswarm/config.hpp"
#include "sciswarm/errors.hpp"
#include "sciswarm/events.hpp"
#include "sciswarm/runner.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw sciswarm::IoError("cannot read '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

struct RunArgs {
    std::string config_path;
    sciswarm::CliOverrides overrides;
};

void add_override_flags(CLI::App* cmd, sciswarm::CliOverrides& overrides) {
    cmd->add_option("--seed", overrides.seed, "Master seed (overrides the config)");
    cmd->add_option("--iterations", overrides.iterations, "Iteration count T");
    cmd->add_option("--labs", overrides.labs, "Initial population N0");
    cmd->add_option("--landscape", overrides.landscape, "Landscape name");
    cmd->add_option("--dim", overrides.dim, "Claim-space dimension D");
    cmd->add_option("--mode", overrides.mode, "Fitness mode: reference|votes|multi_objective");
    cmd->add_option("--out", overrides.out, "Output directory");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"sciswarm: a deterministic swarm-of-virtual-labs simulator"};
    app.require_subcommand(1);

    RunArgs run_args;
    CLI::App* run_cmd = app.add_subcommand("run", "Execute one experiment");
    run_cmd->add_option("--config", run_args.config_path, "Configuration JSON path")->required();
    add_override_flags(run_cmd, run_args.overrides);

    std::string replay_log;
    CLI::App* replay_cmd = app.add_subcommand("replay", "Audit an event log");
    replay_cmd->add_option("--log", replay_log, "events.jsonl path")->required();

    RunArgs sweep_args;
    std::string vary;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "Grid over one config key");
    sweep_cmd->add_option("--config", sweep_args.config_path, "Configuration JSON path")
        ->required();
    sweep_cmd->add_option("--vary", vary, "KEY=v1,v2,... single-key grid")->required();
    sweep_cmd->add_option("--out", sweep_args.overrides.out, "Output root directory")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    const auto catalog = sciswarm::BehaviorCatalog::with_defaults();
    try {
        if (run_cmd->parsed()) {
            const std::string text = read_file(run_args.config_path);
            const sciswarm::RunConfig config =
                sciswarm::load_config(text, catalog, run_args.overrides);
            const sciswarm::RunSummary summary =
                sciswarm::run(config, catalog, config.out_dir);
            std::cout << sciswarm::to_json(summary).dump(2) << '\n';
            return summary.status == "extinct" ? 3 : 0;
        }
        if (replay_cmd->parsed()) {
            std::ifstream log(replay_log);
            if (!log) {
                throw sciswarm::IoError("cannot read '" + replay_log + "'");
            }
            const sciswarm::ReplayResult result = sciswarm::replay_events(log);
            nlohmann::ordered_json doc;
            doc["status"] = result.status;
            doc["population"] = result.population;
            auto budgets = nlohmann::ordered_json::array();
            for (const auto& [id, budget] : result.budgets) {
                budgets.push_back({id, budget});
            }
            doc["budgets"] = std::move(budgets);
            auto trust = nlohmann::ordered_json::array();
            for (const auto& [id, value] : result.trust) {
                trust.push_back({id, value});
            }
            doc["trust"] = std::move(trust);
            doc["consistent_with_summary"] = result.consistent_with_summary;
            if (!result.consistent_with_summary) {
                doc["detail"] = result.detail;
            }
            std::cout << doc.dump(2) << '\n';
            return result.consistent_with_summary ? 0 : 1;
        }
        if (sweep_cmd->parsed()) {
            const auto eq = vary.find('=');
            if (eq == std::string::npos || eq == 0 || eq + 1 >= vary.size()) {
                throw sciswarm::ValidationError("--vary expects KEY=v1,v2,...");
            }
            const std::string key = vary.substr(0, eq);
            std::vector<std::string> values;
            std::stringstream list(vary.substr(eq + 1));
            std::string item;
            while (std::getline(list, item, ',')) {
                values.push_back(item);
            }
            if (values.empty()) {
                throw sciswarm::ValidationError("--vary expects at least one value");
            }
            const std::string text = read_file(sweep_args.config_path);
            const std::string out_root = *sweep_args.overrides.out;
            sciswarm::CliOverrides overrides; // per-run out dirs come from the sweep
            const auto results =
                sciswarm::sweep(text, catalog, key, values, overrides, out_root);
            for (const auto& result : results) {
                std::cout << result.dir.string() << ": "
                          << sciswarm::to_json(result.summary).dump() << '\n';
            }
            return 0;
        }
    } catch (const sciswarm::ParseError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const sciswarm::ValidationError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const sciswarm::IoError& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
