#include "sciswarm/events.hpp"

#include "sciswarm/errors.hpp"

#include <array>
#include <istream>
#include <ostream>
#include <sstream>

namespace sciswarm {

const char* to_string(EventKind kind) {
    switch (kind) {
    case EventKind::init: return "init";
    case EventKind::move: return "move";
    case EventKind::explore: return "explore";
    case EventKind::vote_tally: return "vote_tally";
    case EventKind::trust_update: return "trust_update";
    case EventKind::budget_update: return "budget_update";
    case EventKind::prune: return "prune";
    case EventKind::spawn: return "spawn";
    case EventKind::best_update: return "best_update";
    case EventKind::extinction: return "extinction";
    case EventKind::summary: return "summary";
    }
    return "?";
}

void EventLog::write(const nlohmann::ordered_json& event) {
    if (!out_) {
        return;
    }
    *out_ << event.dump() << '\n';
    if (!*out_) {
        throw IoError("failed to write event log");
    }
}

void EventLog::flush() {
    if (out_) {
        out_->flush();
    }
}

namespace {

nlohmann::json parse_line(const std::string& line, std::size_t lineno) {
    try {
        return nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("event log line " + std::to_string(lineno) + ": " + e.what());
    }
}

} // namespace

ReplayResult replay_events(std::istream& in) {
    ReplayResult result;
    result.status = "completed";
    nlohmann::json summary;
    bool saw_summary = false;

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) {
            continue;
        }
        const nlohmann::json event = parse_line(line, lineno);
        const std::string kind = event.at("kind").get<std::string>();
        if (kind == "init") {
            for (const auto& lab : event.at("labs")) {
                const auto id = lab.at("lab").get<LabId>();
                result.budgets[id] = lab.at("budget").get<int>();
                result.trust[id] = 0.0;
            }
        } else if (kind == "budget_update") {
            for (const auto& entry : event.at("budgets")) {
                result.budgets[entry.at(0).get<LabId>()] = entry.at(1).get<int>();
            }
        } else if (kind == "trust_update") {
            for (const auto& entry : event.at("trust")) {
                result.trust[entry.at(0).get<LabId>()] = entry.at(1).get<double>();
            }
        } else if (kind == "prune") {
            const auto id = event.at("lab").get<LabId>();
            result.budgets.erase(id);
            result.trust.erase(id);
        } else if (kind == "spawn") {
            const auto id = event.at("lab").get<LabId>();
            result.budgets[id] = event.at("budget").get<int>();
            result.trust[id] = 0.0;
        } else if (kind == "extinction") {
            result.status = "extinct";
        } else if (kind == "summary") {
            summary = event;
            saw_summary = true;
        }
    }
    result.population = result.budgets.size();

    if (!saw_summary) {
        result.detail = "no summary event found";
        return result;
    }
    std::map<LabId, int> summary_budgets;
    for (const auto& entry : summary.at("budgets")) {
        summary_budgets[entry.at(0).get<LabId>()] = entry.at(1).get<int>();
    }
    std::map<LabId, double> summary_trust;
    for (const auto& entry : summary.at("trust")) {
        summary_trust[entry.at(0).get<LabId>()] = entry.at(1).get<double>();
    }
    if (summary.at("status").get<std::string>() != result.status) {
        result.detail = "status mismatch";
    } else if (summary.at("final_population").get<std::size_t>() != result.population) {
        result.detail = "population mismatch";
    } else if (summary_budgets != result.budgets) {
        result.detail = "budget mismatch";
    } else if (summary_trust != result.trust) {
        result.detail = "trust mismatch";
    } else {
        result.consistent_with_summary = true;
    }
    return result;
}

std::string audit_barrier_order(std::istream& in) {
    // Barrier stages per iteration; moves/explores interleave freely inside
    // their stage, as do prunes/spawns inside theirs.
    const auto stage_of = [](const std::string& kind) -> int {
        if (kind == "init") return 0;
        if (kind == "move" || kind == "explore") return 1;
        if (kind == "vote_tally") return 2;
        if (kind == "trust_update") return 3;
        if (kind == "best_update") return 4;
        if (kind == "budget_update") return 5;
        if (kind == "prune" || kind == "spawn") return 6;
        if (kind == "extinction") return 7;
        if (kind == "summary") return 8;
        return -1;
    };

    std::string line;
    std::size_t lineno = 0;
    int current_iteration = -1;
    int current_stage = 0;
    bool summary_seen = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) {
            continue;
        }
        const nlohmann::json event = parse_line(line, lineno);
        const std::string kind = event.at("kind").get<std::string>();
        const int iteration = event.at("iteration").get<int>();
        const int stage = stage_of(kind);
        if (stage < 0) {
            return "line " + std::to_string(lineno) + ": unknown event kind '" + kind + "'";
        }
        if (summary_seen) {
            return "line " + std::to_string(lineno) + ": event after the summary";
        }
        if (iteration < current_iteration) {
            return "line " + std::to_string(lineno) + ": iteration went backwards";
        }
        if (iteration > current_iteration) {
            current_iteration = iteration;
            current_stage = 0;
        }
        if (stage < current_stage && kind != "summary") {
            return "line " + std::to_string(lineno) + ": '" + kind +
                   "' out of barrier order";
        }
        current_stage = std::max(current_stage, stage);
        if (kind == "summary") {
            summary_seen = true;
        }
    }
    if (!summary_seen) {
        return "log ends without a summary event";
    }
    return "";
}

} // namespace sciswarm
