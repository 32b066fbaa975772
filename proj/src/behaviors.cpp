#include "sciswarm/behaviors.hpp"

#include "sciswarm/errors.hpp"

namespace sciswarm {

namespace {

Action make_explore(const LabState& lab, const SwarmSnapshot& snapshot, RngStream& stream,
                    bool forced) {
    Action action;
    action.kind = Action::Kind::explore_move;
    action.forced_explore = forced;
    action.position =
        explore_move(lab.position, snapshot.params->explore_scale, snapshot.bounds, stream);
    action.velocity.assign(lab.position.size(), 0.0);
    return action;
}

} // namespace

Action default_behavior(const LabState& lab, const SwarmSnapshot& snapshot, RngStream& stream) {
    if (lab.explorer_flag) {
        return make_explore(lab, snapshot, stream, true);
    }
    if (stream.next_uniform() < snapshot.epsilon) {
        return make_explore(lab, snapshot, stream, false);
    }
    const Position* target = nullptr;
    if (snapshot.mode == FitnessMode::multi_objective) {
        target = &snapshot.archive->sample(stream).position;
    } else {
        target = &snapshot.global_best->position;
    }
    Action action;
    action.kind = Action::Kind::pso_move;
    action.velocity = velocity_update(lab, *target, snapshot.coefficients,
                                      snapshot.params->v_max, stream);
    action.position = position_update(lab.position, action.velocity, snapshot.bounds);
    return action;
}

BehaviorCatalog BehaviorCatalog::with_defaults() {
    BehaviorCatalog catalog;
    catalog.register_behavior("default", default_behavior);
    return catalog;
}

void BehaviorCatalog::register_behavior(const std::string& name, BehaviorFn behavior) {
    if (behaviors_.contains(name)) {
        throw DuplicateName("behavior '" + name + "' is already registered");
    }
    behaviors_.emplace(name, std::move(behavior));
}

const BehaviorFn* BehaviorCatalog::find(const std::string& name) const {
    auto it = behaviors_.find(name);
    return it == behaviors_.end() ? nullptr : &it->second;
}

std::vector<std::string> BehaviorCatalog::names() const {
    std::vector<std::string> out;
    out.reserve(behaviors_.size());
    for (const auto& [name, fn] : behaviors_) {
        out.push_back(name);
    }
    return out;
}

} // namespace sciswarm
