#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "agr/core.hpp"
#include "agr/target.hpp"

namespace agr {

// Machine maintenance: a worker repairs a machine with a loose compartment
// screw and a possibly damaged relay; the robot fetches tools. Tool ids:
enum MntTool : uint8_t {
    kScrewdriver = 0,
    kMultimeter = 1,
    kRelayPart = 2,
    kDummyTool1 = 3,
    kDummyTool2 = 4,
    kDummyTool3 = 5,
};
inline constexpr int kMntToolCount = 6;

// Worker activity and object alphabets for observed triples.
enum MntActivity : uint8_t { kMntNone = 0, kMntInspect = 1, kMntReplace = 2, kMntScrew = 3 };
enum MntObject : uint8_t { kMntBoard = 0, kMntCompartment = 1 };

struct MaintenanceState {
    bool screw_loose = false;
    bool relay_damaged = false;
    bool compartment_inspected = false;  // latest compartment inspection came back OK
    bool relay_inspected = false;        // latest relay measurement came back OK
    uint8_t tools_present = 0;           // bitmask by MntTool
    ActivityTriple worker{};             // worker's most recent activity outcome

    bool has_tool(int tool) const { return (tools_present >> tool) & 1u; }
    void set_tool(int tool) { tools_present |= static_cast<uint8_t>(1u << tool); }
    void clear_tool(int tool) { tools_present &= static_cast<uint8_t>(~(1u << tool)); }

    auto operator<=>(const MaintenanceState&) const = default;
};

struct MaintenanceConfig {
    double expertise = 0.75;  // worker accuracy for visual checks and screwing
    double p_initial_loose = 0.5;
    double p_initial_damaged = 0.5;
    int fetch_cost_steps = 3;  // worker steps elapsing during one tool fetch
};

// Sensor payload for steps without a worker observation.
struct MntNull {
    auto operator<=>(const MntNull&) const = default;
};

// Generative maintenance model. Actions: Perceive (watch the worker one
// step) or Bring(tool) (fetch a tool while the worker continues alone).
// Step rewards stay within [-16, +10].
class MaintenanceModel {
public:
    using State = MaintenanceState;
    using Obs = Observation<MntNull>;

    static constexpr ActionId kPerceive = 0;
    static constexpr ActionId kBringBase = 1;  // kBringBase + tool id

    explicit MaintenanceModel(MaintenanceConfig cfg = {});

    int action_count() const { return 1 + kMntToolCount; }
    State initial_state(Rng& rng) const;
    StepOutcome<State, Obs> step(const State& s, ActionId a, Rng& rng) const;
    bool is_terminal(const State& s) const {
        return !s.screw_loose && !s.relay_damaged && s.compartment_inspected &&
               s.relay_inspected;
    }
    double pgs_points(const State& s) const;
    std::optional<State> transform_particle(const State&, Rng&, const History<Obs>&) const {
        return std::nullopt;  // beliefs recover through rejection alone
    }
    bool consistent_with(const State&, const History<Obs>&) const { return true; }

    // A tool is needed while the worker's situation calls for it: a repair is
    // pending after a NOT_OK inspection, or the last attempt was blocked.
    bool tool_needed(const State& s, int tool) const;

    // One worker activity. Exposed so tests can drive the worker directly.
    TargetStep<State> advance_target(const State& s, Rng& rng) const;

    std::span<const GoalCondition<State>> goals() const { return goals_; }
    const MaintenanceConfig& config() const { return cfg_; }

    static const char* tool_name(int tool);
    static const char* action_name(ActionId a);

private:
    MaintenanceConfig cfg_;
    std::vector<GoalCondition<State>> goals_;
};

}  // namespace agr
