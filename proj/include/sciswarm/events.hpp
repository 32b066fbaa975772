// The append-only event log: one single-line JSON object per event with
// stable key order, flushed at iteration barriers, plus the independent
// replay audit that reconstructs the final population, budgets, and trust
// from nothing but the log.
#pragma once

#include "sciswarm/types.hpp"

#include <nlohmann/json.hpp>

#include <iosfwd>
#include <map>
#include <string>

namespace sciswarm {

enum class EventKind {
    init,
    move,
    explore,
    vote_tally,
    trust_update,
    budget_update,
    prune,
    spawn,
    best_update,
    extinction,
    summary,
};

const char* to_string(EventKind kind);

class EventLog {
public:
    // A null stream disables logging; writes become no-ops.
    explicit EventLog(std::ostream* out) : out_(out) {}

    // Serializes one event per line. Throws IoError on stream failure.
    void write(const nlohmann::ordered_json& event);

    // Barrier flush.
    void flush();

    bool enabled() const { return out_ != nullptr; }

private:
    std::ostream* out_ = nullptr;
};

struct ReplayResult {
    std::string status; // "completed" | "extinct"
    std::map<LabId, int> budgets;
    std::map<LabId, double> trust;
    std::size_t population = 0;
    bool consistent_with_summary = false;
    std::string detail; // first inconsistency, empty when consistent
};

// Replays init/budget_update/prune/spawn/trust_update/extinction/summary
// events and checks the reconstruction against the summary event's final
// state. Throws ParseError on malformed logs.
ReplayResult replay_events(std::istream& in);

// Verifies that event kinds within each iteration appear in barrier order.
// Returns an empty string when the log is well-ordered, otherwise a
// description of the first violation.
std::string audit_barrier_order(std::istream& in);

} // namespace sciswarm
