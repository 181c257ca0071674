#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>

namespace agr {

// Shared result alphabet for observed worker activities. Domains may emit a
// subset; the planner never interprets results, it only matches them.
enum class ActResult : uint8_t { ok, not_ok, none, fail };

inline const char* result_name(ActResult r) {
    switch (r) {
        case ActResult::ok: return "OK";
        case ActResult::not_ok: return "NOT_OK";
        case ActResult::none: return "NONE";
        case ActResult::fail: return "FAIL";
    }
    return "?";
}

// One observed worker step: what was attempted, on what, and how it ended.
// Activity and object ids are domain alphabets.
struct ActivityTriple {
    uint8_t activity = 0;
    uint8_t object = 0;
    ActResult result = ActResult::none;

    auto operator<=>(const ActivityTriple&) const = default;
};

// Result of advancing the simulated worker by one activity.
template <class State>
struct TargetStep {
    State state;
    ActivityTriple triple;
    double reward = 0.0;
};

// Named goal predicate over world states.
template <class State>
struct GoalCondition {
    std::string name;
    std::function<bool(const State&)> satisfied;
};

template <class State>
int count_satisfied_goals(std::span<const GoalCondition<State>> goals, const State& state) {
    int n = 0;
    for (const auto& g : goals)
        if (g.satisfied(state)) ++n;
    return n;
}

}  // namespace agr
